use std::fmt;

use super::complex::verify_homotopy_interleaving;
use super::module::verify_module_interleaving;
use crate::complexes::{is_nullhomotopic, ChainMap};
use crate::error::{Error, Result};
use crate::exact::{format_rational, is_negative, Field, Rational};
use crate::presentation::{smoothing_fp, FPMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Module,
    Homotopy,
    Derived,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Module => "module",
            Level::Homotopy => "homotopy",
            Level::Derived => "derived",
        }
    }

    pub fn parse(text: &str) -> Result<Level> {
        match text {
            "module" => Ok(Level::Module),
            "homotopy" => Ok(Level::Homotopy),
            "derived" => Ok(Level::Derived),
            other => Err(Error::Parse(format!("unknown level {other:?}"))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateMaps {
    Module {
        forward: FPMorphism,
        backward: FPMorphism,
    },
    /// Chain maps with homotopies `h: ψ[ε]φ ≃ s_{2ε}` on the source and
    /// `h′: φ[ε]ψ ≃ s_{2ε}` on the target.
    Complex {
        forward: ChainMap,
        backward: ChainMap,
        source_homotopy: crate::complexes::Homotopy,
        target_homotopy: crate::complexes::Homotopy,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleavingCertificate {
    pub level: Level,
    pub epsilon: Rational,
    pub maps: CertificateMaps,
}

impl InterleavingCertificate {
    pub fn module(epsilon: Rational, forward: FPMorphism, backward: FPMorphism) -> Self {
        InterleavingCertificate {
            level: Level::Module,
            epsilon,
            maps: CertificateMaps::Module { forward, backward },
        }
    }

    /// Builds a homotopy- or derived-level certificate, solving for the
    /// witness homotopies. `None` if the pair is not an interleaving.
    pub fn complex(level: Level, epsilon: Rational, forward: ChainMap, backward: ChainMap) -> Option<Self> {
        let (h, h2) = verify_homotopy_interleaving(&forward, &backward, &epsilon)?;
        Some(InterleavingCertificate {
            level,
            epsilon,
            maps: CertificateMaps::Complex {
                forward,
                backward,
                source_homotopy: h,
                target_homotopy: h2,
            },
        })
    }

    pub fn field(&self) -> Field {
        match &self.maps {
            CertificateMaps::Module { forward, .. } => forward.source().field(),
            CertificateMaps::Complex { forward, .. } => forward.field(),
        }
    }

    /// Re-checks the certificate exactly, including the stored homotopies.
    pub fn verify(&self) -> bool {
        match &self.maps {
            CertificateMaps::Module { forward, backward } => {
                self.level == Level::Module
                    && verify_module_interleaving(forward, backward, &self.epsilon)
            }
            CertificateMaps::Complex {
                forward,
                backward,
                source_homotopy,
                target_homotopy,
            } => {
                if self.level == Level::Module || !forward.is_chain_map() || !backward.is_chain_map() {
                    return false;
                }
                let Ok((a, b)) = composites(forward, backward, &self.epsilon) else {
                    return false;
                };
                source_homotopy.witnesses(&a) && target_homotopy.witnesses(&b)
            }
        }
    }

    /// An `(ε + ε′)`-interleaving of the outer ends of two chained
    /// certificates `A ~ B` (self) and `B ~ C` (other).
    pub fn compose(&self, other: &InterleavingCertificate) -> Result<InterleavingCertificate> {
        let (e1, e2) = (&self.epsilon, &other.epsilon);
        let total = e1 + e2;
        match (&self.maps, &other.maps) {
            (
                CertificateMaps::Module { forward: f1, backward: g1 },
                CertificateMaps::Module { forward: f2, backward: g2 },
            ) => {
                let forward = f2.shift(e1).compose(f1)?;
                let backward = g1.shift(e2).compose(g2)?;
                Ok(InterleavingCertificate::module(total, forward, backward))
            }
            (
                CertificateMaps::Complex { forward: f1, backward: g1, .. },
                CertificateMaps::Complex { forward: f2, backward: g2, .. },
            ) if self.level == other.level => {
                let forward = f2.shift(e1).compose(f1)?;
                let backward = g1.shift(e2).compose(g2)?;
                InterleavingCertificate::complex(self.level, total, forward, backward).ok_or_else(
                    || Error::NotWellDefined("composite is not an interleaving".into()),
                )
            }
            _ => Err(Error::InvalidArgument(
                "certificates at different levels".into(),
            )),
        }
    }

    /// The same interleaving seen at a larger `ε′ ≥ ε`, by composing both
    /// maps with smoothings.
    pub fn widen(&self, wider: &Rational) -> Result<InterleavingCertificate> {
        let delta = wider - &self.epsilon;
        if is_negative(&delta) {
            return Err(Error::InvalidArgument(format!(
                "cannot narrow an interleaving from {} to {}",
                format_rational(&self.epsilon),
                format_rational(wider)
            )));
        }
        match &self.maps {
            CertificateMaps::Module { forward, backward } => {
                let f = smoothing_fp(forward.target(), &delta)?.compose(forward)?;
                let g = smoothing_fp(backward.target(), &delta)?.compose(backward)?;
                Ok(InterleavingCertificate::module(wider.clone(), f, g))
            }
            CertificateMaps::Complex { forward, backward, .. } => {
                let f = ChainMap::smoothing(forward.target(), &delta)?.compose(forward)?;
                let g = ChainMap::smoothing(backward.target(), &delta)?.compose(backward)?;
                InterleavingCertificate::complex(self.level, wider.clone(), f, g).ok_or_else(|| {
                    Error::NotWellDefined("widened pair is not an interleaving".into())
                })
            }
        }
    }
}

/// `ψ[ε]φ − s_{2ε}` and `φ[ε]ψ − s_{2ε}`.
pub(crate) fn composites(
    forward: &ChainMap,
    backward: &ChainMap,
    epsilon: &Rational,
) -> Result<(ChainMap, ChainMap)> {
    let x = forward.source();
    let y = backward.source();
    if forward.target() != &y.shift(epsilon) || backward.target() != &x.shift(epsilon) {
        return Err(Error::Shape("maps do not form an ε-pair".into()));
    }
    let two = epsilon + epsilon;
    let a = backward
        .shift(epsilon)
        .compose(forward)?
        .sub(&ChainMap::smoothing(x, &two)?)?;
    let b = forward
        .shift(epsilon)
        .compose(backward)?
        .sub(&ChainMap::smoothing(y, &two)?)?;
    Ok((a, b))
}

/// Both composites are nullhomotopic.
pub(crate) fn homotopy_witnesses(
    forward: &ChainMap,
    backward: &ChainMap,
    epsilon: &Rational,
) -> Option<(crate::complexes::Homotopy, crate::complexes::Homotopy)> {
    let (a, b) = composites(forward, backward, epsilon).ok()?;
    Some((is_nullhomotopic(&a)?, is_nullhomotopic(&b)?))
}
