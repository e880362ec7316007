//! Responsible-AI assessment workbench for investors.
//!
//! Three assessment components share one domain model:
//!
//! * use-case materiality (regulatory flag, ESG impact marks, impact scope),
//! * a ten-indicator governance checklist,
//! * a deep-dive question bank scored on a 0..=5 disclosure rubric.
//!
//! [`scoring`] holds the pure formulas, [`bank`] loads and queries question
//! banks, [`store`] persists sessions with an append-only audit journal,
//! [`workflow`] applies audited edits to sessions and [`report`] renders
//! deterministic JSON, CSV and Markdown.

pub mod bank;
pub mod model;
pub mod report;
pub mod scoring;
pub mod store;
pub mod workflow;
