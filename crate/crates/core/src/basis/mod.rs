//! Standard bases, Hilbert series and ideal operations.

pub mod engine;
pub mod hilbert;
pub mod ideal;
pub mod order;

use thiserror::Error;

pub use engine::{current_task_timeout, normal_form, standard_basis, with_task_timeout, Deadline};
pub use hilbert::{hilbert_data, hilbert_numerator, HilbertData};
pub use ideal::{Ideal, Locality, QuotientDimension, SATURATION_STEP_LIMIT};
pub use order::MonomialOrder;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("computation exceeded the time limit of {seconds} s")]
    Timeout { seconds: f64 },
    #[error("operation needs {needed} variables, more than supported")]
    TooManyVariables { needed: usize },
    #[error("saturation did not stabilise after {steps} steps")]
    SaturationDidNotStabilise { steps: usize },
}
