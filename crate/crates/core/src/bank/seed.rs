use super::{load_bank, BankManifest};
use crate::model::{ImpactScope, RegulatoryFlag, ScoringConfig, UseCaseProfile};
use crate::scoring::refresh_use_case;

const SAMPLE_BANK: &str = include_str!("../../data/sample_bank.json");
const COMPLETE_BANK: &str = include_str!("../../data/complete_bank.json");

/// The bank holding only the published example questions and metrics.
pub fn sample_bank() -> BankManifest {
    load_bank(SAMPLE_BANK).expect("bundled sample bank is valid")
}

/// The synthetic bank that satisfies every published size rule.
pub fn complete_bank() -> BankManifest {
    load_bank(COMPLETE_BANK).expect("bundled complete bank is valid")
}

pub fn builtin_bank_versions() -> Vec<&'static str> {
    vec!["sample-1", "synthetic-complete-1"]
}

/// Look up a bundled bank by its version string.
pub fn builtin_bank(version: &str) -> Option<BankManifest> {
    match version {
        "sample-1" => Some(sample_bank()),
        "synthetic-complete-1" => Some(complete_bank()),
        _ => None,
    }
}

use RegulatoryFlag::{High, Medium, NotDetermined};

// (sector, use case, description, flag, scope)
const SEED: [(&str, &str, &str, RegulatoryFlag, ImpactScope); 27] = [
    ("Information technology", "Product development", "AI tools for new products or using AI to power existing features.", NotDetermined, ImpactScope::Industry),
    ("Information technology", "Automation", "Automation of tasks using AI in business processes.", NotDetermined, ImpactScope::Industry),
    ("Information technology", "Risk management", "AI to predict when a system might fail or identify vulnerabilities.", Medium, ImpactScope::Industry),
    ("Health care", "Health research / testing", "AI aids in the generation of valuable insights and expediting various processes.", High, ImpactScope::Industry),
    ("Health care", "Clinical care", "AI for synthesising and summaries of patient records, early diagnosis or identification of test results.", High, ImpactScope::Systemic),
    ("Health care", "Product development", "AI for the innovation of health applications and medical devices.", Medium, ImpactScope::Industry),
    ("Financials", "Insurance pricing", "AI can model and calculate prices and terms for insurance products.", Medium, ImpactScope::Industry),
    ("Financials", "Fraud detection", "AI can detect and prevent fraud, protecting customers and banks.", Medium, ImpactScope::Industry),
    ("Financials", "Credit scoring / approval", "AI can augment decisions around who gets access to capital and how much it costs them.", Medium, ImpactScope::Systemic),
    ("Consumer Discretionary", "Supply chain management", "AI can optimise logistics, predict demand, and improves quality control.", Medium, ImpactScope::Industry),
    ("Consumer Discretionary", "Personalised offering", "AI personalises shopping experiences and advice.", Medium, ImpactScope::Industry),
    ("Consumer Discretionary", "Instore surveillance", "AI can be used to analyse and derive insights from in-store.", Medium, ImpactScope::Industry),
    ("Industrials", "Process automation", "AI is significantly advancing process improvement and automation.", Medium, ImpactScope::Industry),
    ("Industrials", "Asset maintenance", "AI can enable real-time equipment monitoring, predicting failures and more.", Medium, ImpactScope::Industry),
    ("Industrials", "Logistics management", "AI is optimising delivery routes, automating warehouse operations, and providing precise demand forecasting.", Medium, ImpactScope::Industry),
    ("Energy", "Energy efficiency", "AI-driven systems in homes or businesses equipped with IoT devices and smart meters can manage energy consumption effectively.", Medium, ImpactScope::Industry),
    ("Energy", "Infrastructure maintenance", "AI predicts when equipment in power plants or on the grid might fail and recommending pre-emptive maintenance.", High, ImpactScope::Industry),
    ("Energy", "Energy optimisation", "AI can predict energy demand and supply fluctuations.", High, ImpactScope::Industry),
    ("Real Estate", "Property valuation", "AI algorithms can estimate property values more accurately and efficiently.", Medium, ImpactScope::Industry),
    ("Real Estate", "Facility management", "AI algorithms work together to manage building operations such as heating and ventilation.", Medium, ImpactScope::Industry),
    ("Real Estate", "Customer services", "AI can transform customer by chatbots and virtual assistants.", Medium, ImpactScope::Industry),
    ("Materials", "Material discovery", "AI accelerates the discovery and development of new materials by analysing complex chemical and physical data.", Medium, ImpactScope::Industry),
    ("Materials", "Resource identification", "AI is analysing geological data, satellite imagery, and sensor data from exploration sites to identify promising areas for resource extraction more accurately and quickly.", Medium, ImpactScope::Industry),
    ("Materials", "Health and safety", "AI can use sensing devices to detect unsafe practices or environmental conditions.", Medium, ImpactScope::Industry),
    ("Telecommunications", "Asset management", "AI can predict network traffic and optimise the flow of data.", Medium, ImpactScope::Industry),
    ("Telecommunications", "Customer service", "AI can provide 24/7 customer support, handle routine inquiries, and troubleshoot common issues.", Medium, ImpactScope::Industry),
    ("Telecommunications", "Fraud detection", "AI algorithms can analyse vast amounts of call and data transfer records in real-time.", Medium, ImpactScope::Industry),
];

fn slug(text: &str) -> String {
    let mut out = String::new();
    for c in text.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('-') && !out.is_empty() {
            out.push('-');
        }
    }
    out.trim_end_matches('-').to_string()
}

/// The 27 bundled use cases, nine sectors with three each. Impact marks start
/// blank and the default materiality is computed under the default config.
pub fn seed_use_cases() -> Vec<UseCaseProfile> {
    let cfg = ScoringConfig::default();
    SEED.iter()
        .map(|(sector, name, description, flag, scope)| {
            let mut profile = UseCaseProfile::new(
                format!("{}.{}", slug(sector), slug(name)),
                *sector,
                *name,
                *description,
                *flag,
                *scope,
            );
            refresh_use_case(&mut profile, &cfg).expect("seed profiles are valid");
            profile
        })
        .collect()
}
