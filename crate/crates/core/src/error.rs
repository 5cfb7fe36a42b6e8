use thiserror::Error;

use crate::basis::{BasisSymbol, SpaceId};

pub type Result<T> = std::result::Result<T, CalcError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("space mismatch: {left} vs {right}")]
    SpaceMismatch { left: SpaceId, right: SpaceId },
    #[error("pairing needs the coefficient of {symbol}, which lies outside the known support of a partial class")]
    UnknownSupport { symbol: BasisSymbol },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no rule for symbol {symbol} under {map}")]
    UnsupportedSymbol { map: String, symbol: BasisSymbol },
    #[error("invalid genus {0}: requires g = 1 mod 3 and g >= 4")]
    InvalidGenus(u32),
    #[error("coefficient {name} must be nonnegative, got {value}")]
    NegativeCoefficient { name: String, value: String },
    #[error("class has zero delta_irr coefficient; slope undefined")]
    ZeroDelta0,
    #[error("slope requires positive lambda coefficient and negative delta_irr coefficient (got {lambda}, {delta})")]
    SignError { lambda: String, delta: String },
    #[error("explicit boundary hits ({hits}) exceed the total boundary degree ({total})")]
    NegativeBoundary { total: String, hits: String },
    #[error("label {0} already carries a section")]
    DuplicateLabel(u32),
    #[error("unknown catalog id: {0}")]
    UnknownId(String),
}
