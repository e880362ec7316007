use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use esgai_core::bank::{BankError, FilterError};
use esgai_core::report::ReportError;
use esgai_core::scoring::ScoringError;
use esgai_core::store::StoreError;
use esgai_core::workflow::WorkflowError;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Error body of every failed request. `code` is the library error code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl ApiError {
    pub fn new(code: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            code: code.into(),
            message: message.into(),
            details: None,
        }
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn status(&self) -> StatusCode {
        status_for(&self.code)
    }
}

/// HTTP status for a library error code.
pub fn status_for(code: &str) -> StatusCode {
    match code {
        "store.not_found" | "use_case.not_found" | "bank.not_found" | "route.not_found" => {
            StatusCode::NOT_FOUND
        }
        "store.conflict" | "store.exists" => StatusCode::CONFLICT,
        "store.io" | "store.corrupt" => StatusCode::INTERNAL_SERVER_ERROR,
        "request.method" => StatusCode::METHOD_NOT_ALLOWED,
        "request.precondition" => StatusCode::PRECONDITION_REQUIRED,
        c if c.starts_with("request.")
            || c.starts_with("config.")
            || c.starts_with("bank.")
            || c.starts_with("report.")
            || c.starts_with("archive.")
            || c == "filter.unknown_value"
            || c == "session.invalid" =>
        {
            StatusCode::BAD_REQUEST
        }
        _ => StatusCode::UNPROCESSABLE_ENTITY,
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = self.status();
        if status.is_server_error() {
            tracing::error!(code = %self.code, message = %self.message, "request failed");
        }
        (status, Json(self)).into_response()
    }
}

fn violations_details(v: &[esgai_core::model::Violation]) -> Option<Value> {
    (!v.is_empty()).then(|| json!({ "violations": v }))
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        ApiError::new(e.code(), e.to_string()).with_details(e.details())
    }
}

impl From<WorkflowError> for ApiError {
    fn from(e: WorkflowError) -> Self {
        ApiError {
            code: e.code().to_string(),
            message: e.to_string(),
            details: violations_details(e.violations()),
        }
    }
}

impl From<ScoringError> for ApiError {
    fn from(e: ScoringError) -> Self {
        ApiError {
            code: e.code().to_string(),
            message: e.to_string(),
            details: violations_details(e.violations()),
        }
    }
}

impl From<BankError> for ApiError {
    fn from(e: BankError) -> Self {
        ApiError {
            code: e.code().to_string(),
            message: e.to_string(),
            details: violations_details(&e.issues),
        }
    }
}

impl From<FilterError> for ApiError {
    fn from(e: FilterError) -> Self {
        ApiError::new(e.code(), e.to_string()).with_details(json!({ "field": e.field }))
    }
}

impl From<ReportError> for ApiError {
    fn from(e: ReportError) -> Self {
        ApiError::new(e.code(), e.to_string())
    }
}
