use std::fmt;

use quatshear::calc::{has_divergence, DivResult};
use quatshear::ncalg::{NCPoly, VectorField};

/// Where the time-one map of a polynomial field sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VolumeClass {
    /// Divergence 0: volume 1.
    Aut1,
    /// Has a divergence: automorphism with volume.
    AutV(NCPoly),
    Neither,
}

impl VolumeClass {
    pub fn label(&self) -> &'static str {
        match self {
            VolumeClass::Aut1 => "Aut_1",
            VolumeClass::AutV(_) => "Aut_V",
            VolumeClass::Neither => "neither",
        }
    }
}

impl fmt::Display for VolumeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VolumeClass::Aut1 => write!(f, "Aut_1 (div = 0)"),
            VolumeClass::AutV(d) => write!(f, "Aut_V (div = {d})"),
            VolumeClass::Neither => write!(f, "neither (no divergence)"),
        }
    }
}

pub fn aut_volume_report(x: &VectorField) -> VolumeClass {
    match has_divergence(x) {
        DivResult::HasDivergence(d) if d.is_zero() => VolumeClass::Aut1,
        DivResult::HasDivergence(d) => VolumeClass::AutV(d),
        DivResult::NotLeftLinear { .. } => VolumeClass::Neither,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quatshear::expr::{parse, parse_field};

    #[test]
    fn classes() {
        assert_eq!(aut_volume_report(&parse_field("w^2 ; 0").unwrap()), VolumeClass::Aut1);
        assert_eq!(aut_volume_report(&parse_field("z*w^2 ; 0").unwrap()), VolumeClass::AutV(parse("w^2").unwrap()));
        assert_eq!(aut_volume_report(&parse_field("z^2*w ; -z*w^2").unwrap()), VolumeClass::Neither);
    }
}
