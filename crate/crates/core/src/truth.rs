use std::fmt;

/// Three-valued truth with `False < Undefined < True`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TruthValue {
    False,
    Undefined,
    True,
}

impl TruthValue {
    /// Swaps true and false, keeps undefined.
    pub fn negate(self) -> TruthValue {
        match self {
            TruthValue::False => TruthValue::True,
            TruthValue::Undefined => TruthValue::Undefined,
            TruthValue::True => TruthValue::False,
        }
    }

    pub fn from_bool(b: bool) -> TruthValue {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn is_true(self) -> bool {
        self == TruthValue::True
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> TruthValue {
        TruthValue::from_bool(b)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::False => "f",
            TruthValue::Undefined => "u",
            TruthValue::True => "t",
        })
    }
}
