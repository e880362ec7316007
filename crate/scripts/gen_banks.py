#!/usr/bin/env python3
"""Regenerate the shipped question banks under crates/core/data/.

The complete bank is synthetic: question wording, indicator names and most
metric names are invented. Its aggregate shape is constructed so that the
principle x topic tag counts, provenance counts and per-category obligation
counts match the published framework figures.

    python3 scripts/gen_banks.py
"""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
OUT = ROOT / "crates" / "core" / "data"

TOPICS = ["E1", "E2", "E3", "S1", "S2", "S3", "S4", "S5", "S6", "G1", "G2", "G3"]
PRINCIPLES = ["HSE", "HV", "FAR", "PRV", "REL", "TRN", "CON", "ACC"]

# principle x topic question-tag counts
MAPPING = {
    "HSE": [3, 3, 3, 4, 4, 4, 3, 3, 3, 1, 1, 2],
    "HV": [0, 0, 0, 4, 4, 4, 4, 4, 4, 1, 2, 1],
    "FAR": [0, 0, 0, 4, 3, 2, 1, 0, 0, 0, 0, 1],
    "PRV": [0, 0, 0, 0, 4, 2, 4, 6, 0, 0, 4, 0],
    "REL": [0, 1, 1, 1, 1, 0, 2, 4, 1, 2, 1, 0],
    "TRN": [0, 0, 0, 0, 0, 6, 6, 0, 0, 0, 1, 6],
    "CON": [0, 0, 1, 1, 2, 1, 1, 0, 1, 0, 0, 0],
    "ACC": [1, 1, 1, 1, 1, 2, 1, 1, 1, 4, 5, 2],
}

# Explicit tags for ACC so that one broad third-party question spans every
# environmental and social topic.
ACC_TAGS = [
    ["E1", "E2", "E3", "S1", "S2", "S3", "S4", "S5", "S6", "G1"],
    ["G1", "G2"],
    ["G2", "G3"],
    ["S3", "G1", "G2"],
    ["G1", "G2"],
    ["G2", "G3"],
]

KEY_QUESTIONS = {
    "HSE": "Does the company consider the human, societal and environmental wellbeing impacts of its AI systems?",
    "HV": "Does the company ensure its AI systems respect human rights, diversity and individual autonomy?",
    "FAR": "Does the company ensure its AI systems are inclusive and do not produce unfair discrimination?",
    "PRV": "Does the company protect privacy and secure the data used by its AI systems?",
    "REL": "Does the company ensure its AI systems operate reliably and safely for their intended purpose?",
    "TRN": "Does the company disclose when and how AI is used and make AI outcomes explainable?",
    "CON": "Can people affected by the company's AI systems challenge their use or outcomes?",
    "ACC": "Does the company have designated responsibility for AI and RAI within the organisation?",
}

MANDATORY_METRICS = {
    "energy-usage": (
        "Energy usage",
        "Energy consumption of data centres, AI models, AI systems, training pipelines and AI devices. X = A, A = amount of energy used for AI, X >= 0.",
        "smaller_better",
        ["high_risk", "foundation_model"],
    ),
    "ghg-emission": (
        "Greenhouse gas emission",
        "Gas emission of data centres, AI models, AI systems, training pipelines and AI devices. X = A, A = amount of gas emission for AI, X >= 0.",
        "smaller_better",
        ["high_risk", "foundation_model"],
    ),
    "waste-generated-saved": (
        "Tonnes of waste generated/saved",
        "Waste generated or saved during development and operation, from data centres, AI systems and AI devices. X = A, A = amount of waste generated/saved for AI, X >= 0.",
        "contextual",
        ["high_risk", "foundation_model"],
    ),
    "ai-system-performance": (
        "AI system performance",
        "Whether information processed by AI systems is free from errors, inconsistencies or biases: accuracy = (TP + TN) / total predictions, precision = TP / (TP + FP), recall = TP / (TP + FN), fscore = 2 * (precision * recall) / (precision + recall).",
        "bigger_better",
        ["high_risk", "foundation_model"],
    ),
    "model-size": (
        "Size of AI system (model)",
        "Cost of model training, including AI model and data size.",
        "contextual",
        ["foundation_model"],
    ),
    "training-time": (
        "Time to AI model training",
        "Time spent on model training. X = A, A = time spent on model training, X >= 0.",
        "smaller_better",
        ["foundation_model"],
    ),
}

# (indicator, provenance, high-risk obligation, foundation-model obligation,
#  org type, text, metrics, from_published_sample)
# provenance: eu / nist / both / other. Obligation: M / O / None.
Q = {
    "HSE": [
        ("Energy and emissions", "eu", "M", "M", "developer",
         "Does the company measure and disclose the energy consumed by its AI models, training pipelines and data centres?",
         ["energy-usage"]),
        ("Energy and emissions", "eu", "M", "M", "both",
         "Does the company measure and disclose greenhouse gas emissions attributable to its AI systems?",
         ["ghg-emission"]),
        ("Waste and resource use", "both", "M", "M", "developer",
         "Does the company track waste generated or avoided across the AI system lifecycle, including hardware?",
         ["waste-generated-saved"]),
        ("Societal impact assessment", "other", None, None, "both",
         "Does the company assess the societal impacts of its AI systems before deployment?",
         [("m-societal-assessments", "Number of societal impact assessments completed", "bigger_better")]),
        ("Workforce wellbeing", "other", None, None, "purchaser",
         "Does the company support workers whose roles are changed by AI adoption?",
         [("m-reskilling-rate", "Percentage of affected employees offered reskilling", "bigger_better")]),
    ],
    "HV": [
        ("Human oversight", "eu", "O", "O", "both",
         "Does the company keep meaningful human oversight over decisions made or supported by AI?",
         [("m-hitl-coverage", "Percentage of high-risk AI systems with human-in-the-loop controls", "bigger_better")]),
        ("Human rights due diligence", "nist", None, None, "both",
         "Does the company run human rights due diligence on its AI use cases?",
         [("m-hrdd-coverage", "Percentage of AI use cases covered by human rights due diligence", "bigger_better")]),
        ("Human rights due diligence", "other", None, None, "purchaser",
         "Does the company screen AI suppliers for human rights risks?",
         [("m-supplier-hr-screening", "Number of AI suppliers screened for human rights risks", "bigger_better")]),
        ("Stakeholder engagement", "other", None, None, "both",
         "Does the company engage affected stakeholders when designing or procuring AI systems?",
         [("m-stakeholder-sessions", "Number of stakeholder consultations on AI", "bigger_better")]),
        ("Human oversight", "other", None, None, "developer",
         "Can operators override or stop the company's AI systems when needed?",
         [("m-override-capability", "Percentage of AI systems with a documented stop or override control", "bigger_better")]),
    ],
    "FAR": [
        ("Bias testing", "both", "O", "O", "developer",
         "Does the company test its AI systems for bias across relevant demographic groups?",
         [("m-bias-tests", "Number of bias evaluations per model release", "bigger_better")]),
        ("Bias testing", "eu", "O", None, "developer",
         "Does the company examine training data for representativeness and possible bias?",
         [("m-data-bias-review", "Percentage of training datasets reviewed for bias", "bigger_better")]),
        ("Inclusive design", "nist", None, None, "both",
         "Does the company involve diverse teams in AI design and evaluation?",
         [("m-team-diversity", "Diversity ratio of AI development teams", "contextual")]),
        ("Fair outcomes monitoring", "other", None, None, "purchaser",
         "Does the company monitor deployed AI outcomes for disparate impact?",
         [("m-disparity-ratio", "Outcome disparity ratio between groups", "smaller_better")]),
        ("Inclusive design", "other", None, None, "both",
         "Are AI products designed to be accessible to people with disabilities?",
         [("m-accessibility-audits", "Number of accessibility audits of AI products", "bigger_better")]),
    ],
    "PRV": [
        ("Data governance", "both", "M", "M", "both",
         "Does the company apply data governance practices covering provenance, quality and lawful basis for AI data?",
         [("m-data-lineage", "Percentage of AI datasets with documented lineage", "bigger_better")]),
        ("Privacy protection", "both", "M", "M", "both",
         "Does the company perform privacy impact assessments for AI systems handling personal data?",
         [("m-pia-coverage", "Percentage of AI systems with a privacy impact assessment", "bigger_better")]),
        ("Security testing", "both", "O", "O", "developer",
         "Does the company test its AI systems against adversarial attacks and data poisoning?",
         [("m-red-team", "Number of AI red-team exercises", "bigger_better")]),
        ("Data governance", "eu", "O", "O", "developer",
         "Does the company document the data sets used to train, validate and test AI models?",
         [("m-datasheets", "Percentage of datasets with datasheets", "bigger_better")]),
        ("Third-party data management", "nist", None, None, "purchaser",
         "Does the company assess privacy and security practices of third-party AI data providers?",
         [("m-vendor-assessments", "Number of third-party data provider assessments", "bigger_better")]),
        ("Privacy protection", "other", None, None, "both",
         "Does the company minimise the personal data its AI systems collect and retain?",
         [("m-retention-period", "Average retention period of AI personal data", "smaller_better")]),
        ("Security testing", "other", None, None, "both",
         "Are AI-related security incidents detected and remediated within defined timeframes?",
         [("m-remediation-time", "Mean time to remediate AI security incidents", "smaller_better")]),
    ],
    "REL": [
        ("System performance", "both", "M", "M", "developer",
         "Does the company measure the accuracy and error rates of its AI systems before and after deployment?",
         ["ai-system-performance"]),
        ("Robustness testing", "both", "M", "M", "developer",
         "Does the company test AI systems for robustness under unexpected inputs and conditions?",
         [("m-robustness-cases", "Number of robustness test cases executed", "bigger_better")]),
        ("Safety monitoring", "both", "M", "M", "both",
         "Does the company continuously monitor deployed AI systems for safety issues?",
         [("m-monitored-systems", "Percentage of deployed AI systems under continuous monitoring", "bigger_better")]),
        ("Model lifecycle management", "eu", "M", "M", "developer",
         "Does the company keep logs that allow AI system behaviour to be traced over its lifecycle?",
         [("m-log-retention", "Percentage of AI systems with automatic event logging", "bigger_better")]),
        ("Safety monitoring", "nist", None, None, "purchaser",
         "Does the company define fallback procedures when an AI system fails?",
         [("m-fallback-plans", "Percentage of AI systems with a tested fallback plan", "bigger_better")]),
    ],
    "TRN": [
        ("Documentation and record keeping", "both", "M", "M", "developer",
         "Does the company maintain technical documentation describing its AI models and their training?",
         ["model-size", "training-time"]),
        ("AI disclosure", "both", "M", "M", "both",
         "Does the company inform people when they are interacting with an AI system?",
         [("m-ai-notices", "Percentage of AI interactions carrying an AI notice", "bigger_better")]),
        ("Explainability", "eu", "M", "M", "developer",
         "Can the company explain how its AI systems reach their outputs to affected users?",
         [("m-explanations", "Percentage of AI decisions with an available explanation", "bigger_better")]),
        ("Documentation and record keeping", "eu", "M", "M", "both",
         "Does the company publish instructions for use and known limitations of its AI systems?",
         [("m-model-cards", "Number of published model cards or system cards", "bigger_better")]),
        ("AI disclosure", "other", None, None, "both",
         "Does the company report its material AI use cases in annual or sustainability reports?",
         [("m-ai-use-disclosure", "Number of AI use cases disclosed publicly", "bigger_better")]),
        ("Explainability", "other", None, None, "purchaser",
         "Does the company require explainability from the AI systems it procures?",
         [("m-procurement-xai", "Percentage of AI contracts with explainability clauses", "bigger_better")]),
    ],
    "CON": [
        ("Redress mechanisms", "nist", None, None, "both",
         "Does the company provide a way for people to contest AI-driven decisions?",
         [("m-appeals", "Number of AI decision appeals received and resolved", "contextual")]),
        ("User feedback", "other", None, None, "both",
         "Does the company collect and act on user feedback about its AI systems?",
         [("m-feedback-actions", "Number of changes made from AI user feedback", "bigger_better")]),
        ("Redress mechanisms", "other", None, None, "purchaser",
         "Are contested AI decisions reviewed by a person within a defined timeframe?",
         [("m-appeal-time", "Average time to resolve AI decision appeals", "smaller_better")]),
    ],
    "ACC": [
        ("Supply chain risk", "both", "M", "O", "both",
         "Does the company manage third-party AI risks across its supply chain, including their environmental, social and governance aspects?",
         [("m-third-party-reviews", "Number of third-party AI risk reviews", "bigger_better")]),
        ("Risk management", "both", "M", "O", "both",
         "Does the company establish methods and metrics to quantify and measure the risks associated with its AI systems?",
         [("m-ai-risk-metrics", "Number of AI risk metrics (e.g., risk exposure index, risk severity score)", "bigger_better")],
         True),
        ("AI incident management", "eu", "M", "O", "both",
         "Does the company have a clear reporting system or process in place for serious AI incidents to inform external stakeholders (e.g., market surveillance authorities, communities) beyond the company?",
         [("m-external-incidents", "Number of AI incidents informed to external stakeholders", "contextual")],
         True),
        ("Accountability framework", "eu", "M", "O", "both",
         "Does the company have an accountability framework to ensure that AI related roles and responsibilities are clearly defined?",
         [("m-defined-roles", "Percentage of defined AI roles and responsibilities", "bigger_better")],
         True),
        ("Accountability framework", "nist", None, None, "both",
         "Does the board receive structured RAI reporting at least once a year?",
         [("m-board-reports", "Number of RAI reports to the board per year", "bigger_better")]),
        ("Risk management", "other", None, None, "purchaser",
         "Does the company include AI risks in its enterprise risk register?",
         [("m-risk-register", "Number of AI risks recorded in the enterprise risk register", "contextual")]),
    ],
}

PRINCIPLE_NAMES = {
    "HSE": "human, societal and environmental wellbeing",
    "HV": "human-centred values",
    "FAR": "fairness",
    "PRV": "privacy and security",
    "REL": "reliability and safety",
    "TRN": "transparency and explainability",
    "CON": "contestability",
    "ACC": "accountability",
}

PROV = {"eu": ["eu_ai_act"], "nist": ["nist"], "both": ["eu_ai_act", "nist"], "other": ["other"]}
OBL = {"M": "mandatory", "O": "optional"}


def assign_tags(principle, count):
    if principle == "ACC":
        return [list(t) for t in ACC_TAGS]
    tags = [[] for _ in range(count)]
    for topic, need in zip(TOPICS, MAPPING[principle]):
        order = sorted(range(count), key=lambda i: (len(tags[i]), i))
        for i in order[:need]:
            tags[i].append(topic)
    return tags


def build():
    questions, metrics, key_questions = [], [], []
    for p in PRINCIPLES:
        key_questions.append({"id": f"KQ-{p}", "principle": p, "text": KEY_QUESTIONS[p]})
        rows = Q[p]
        tags = assign_tags(p, len(rows))
        for n, row in enumerate(rows):
            indicator, prov, hr, fm, org, text, mets = row[:7]
            published = len(row) > 7 and row[7]
            qid = f"{p}-{n + 1:02d}"
            metric_ids = []
            for m in mets:
                if isinstance(m, str):
                    name, desc, direction, mandatory_for = MANDATORY_METRICS[m]
                    metrics.append({"id": m, "name": name, "description": desc,
                                    "direction": direction, "mandatory_for": mandatory_for})
                    metric_ids.append(m)
                else:
                    mid, name, direction = m
                    metrics.append({"id": mid, "name": name,
                                    "description": f"Guide metric for {indicator.lower()}.",
                                    "direction": direction, "mandatory_for": []})
                    metric_ids.append(mid)
            categories, obligation = [], {}
            if hr:
                categories.append("high_risk")
                obligation["high_risk"] = OBL[hr]
            if fm:
                categories.append("foundation_model")
                obligation["foundation_model"] = OBL[fm]
            if not categories:
                categories = ["limited", "minimal"]
            questions.append({
                "id": qid,
                "principle": p,
                "indicator": indicator,
                "key_question_id": f"KQ-{p}",
                "text": text,
                "esg_topics": sorted(tags[n], key=TOPICS.index),
                "org_types": [org],
                "system_categories": categories,
                "obligation": obligation,
                "provenance": PROV[prov],
                "metrics": metric_ids,
                "synthetic": not published,
            })
    return key_questions, questions, metrics


def main():
    key_questions, questions, metrics = build()
    complete = {
        "schema": "esgai.bank/v1",
        "version": "synthetic-complete-1",
        "completeness": "complete",
        "title": "Synthetic complete deep-dive bank",
        "description": "Synthetic bank for testing. Question wording, indicator names and most metric names are invented; tag counts, provenance counts and obligation counts follow the published framework figures. Questions marked synthetic=false and the six mandatory metrics follow published examples.",
        "key_questions": key_questions,
        "questions": questions,
        "metrics": metrics,
    }
    sample_q = [q for q in questions if not q["synthetic"]]
    used = {m for q in sample_q for m in q["metrics"]} | set(MANDATORY_METRICS)
    sample = {
        "schema": "esgai.bank/v1",
        "version": "sample-1",
        "completeness": "sample",
        "title": "Published sample bank",
        "description": "Accountability examples and the six mandatory guide metrics.",
        "key_questions": [k for k in key_questions if k["principle"] == "ACC"],
        "questions": sample_q,
        "metrics": [m for m in metrics if m["id"] in used],
    }
    OUT.mkdir(parents=True, exist_ok=True)
    for name, doc in [("complete_bank.json", complete), ("sample_bank.json", sample)]:
        (OUT / name).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")

    # sanity: reproduce the published aggregates
    assert len(questions) == 42 and len(metrics) == 43 and len(key_questions) == 8
    assert len({(q["principle"], q["indicator"]) for q in questions}) == 27
    for p in PRINCIPLES:
        row = [sum(t in q["esg_topics"] for q in questions if q["principle"] == p) for t in TOPICS]
        assert row == MAPPING[p], (p, row)
    e1 = [q["id"] for q in questions if "E1" in q["esg_topics"]]
    assert e1 == ["HSE-01", "HSE-02", "HSE-03", "ACC-01"], e1


if __name__ == "__main__":
    main()
