//! Named families, for expansion and transition matrices.

use std::fmt;
use std::str::FromStr;

use crate::composition::{all_compositions, Composition};
use crate::error::{Error, Result};
use crate::nsym::{Basis, Matrix};
use crate::qsym::{g_q_hivert, p_q, p_qt, QBasis, QSymElement};
use crate::render::{render_element, render_matrix, Format, LabeledMatrix};
use crate::{hlq, macqt, nabla, FactoredScalar, NSym, NSymFactored, QTScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    S,
    H,
    E,
    Hq,
    Hqt,
    Htilde,
    Wq,
    BoldP,
    Pq,
    Pqt,
    Gq,
    /// `∇(s_α)`; only meaningful as a matrix or an `s`-expansion.
    Nabla,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::S,
        Family::H,
        Family::E,
        Family::Hq,
        Family::Hqt,
        Family::Htilde,
        Family::Wq,
        Family::BoldP,
        Family::Pq,
        Family::Pqt,
        Family::Gq,
        Family::Nabla,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::S => "s",
            Family::H => "h",
            Family::E => "e",
            Family::Hq => "Hq",
            Family::Hqt => "Hqt",
            Family::Htilde => "Htilde",
            Family::Wq => "Wq",
            Family::BoldP => "boldP",
            Family::Pq => "Pq",
            Family::Pqt => "Pqt",
            Family::Gq => "Gq",
            Family::Nabla => "nabla",
        }
    }

    pub fn is_qsym(self) -> bool {
        matches!(self, Family::Pq | Family::Pqt | Family::Gq)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

/// An expanded family member, in whichever ring and algebra it lives.
#[derive(Clone, Debug, PartialEq)]
pub enum Expansion {
    NSym(NSym),
    NSymFactored(NSymFactored),
    QSym(QSymElement<QTScalar>),
    QSymFactored(QSymElement<FactoredScalar>),
}

impl Expansion {
    pub fn render(&self, format: Format) -> Result<String> {
        match self {
            Expansion::NSym(x) => render_element(x, format),
            Expansion::NSymFactored(x) => render_element(x, format),
            Expansion::QSym(x) => render_element(x, format),
            Expansion::QSymFactored(x) => render_element(x, format),
        }
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expansion::NSym(x) => x.fmt(f),
            Expansion::NSymFactored(x) => x.fmt(f),
            Expansion::QSym(x) => x.fmt(f),
            Expansion::QSymFactored(x) => x.fmt(f),
        }
    }
}

/// The NSym families with polynomial coefficients, in the `s` basis.
fn nsym_member(family: Family, alpha: &Composition) -> Option<NSym> {
    Some(match family {
        Family::S => NSym::s(alpha),
        Family::H => NSym::h(alpha).to_s(),
        Family::E => NSym::e(alpha).to_s(),
        Family::Hq => hlq::h_q(alpha),
        Family::Hqt => macqt::h_qt(alpha),
        Family::Htilde => macqt::h_tilde(alpha),
        Family::Wq => hlq::w_q(alpha),
        Family::Nabla => nabla::nabla_s(alpha),
        _ => return None,
    })
}

/// Expands `family_α` in `target`: an NSym basis tag, or `M`/`F` for QSym families.
pub fn expand(family: Family, alpha: &Composition, target: &str) -> Result<Expansion> {
    if family.is_qsym() {
        let basis: QBasis = target.parse()?;
        return Ok(match family {
            Family::Pq => Expansion::QSym(p_q(alpha).convert(basis)),
            Family::Gq => Expansion::QSym(g_q_hivert(alpha).convert(basis)),
            _ => Expansion::QSymFactored(p_qt(alpha).convert(basis)),
        });
    }
    let basis: Basis = target.parse()?;
    if family == Family::BoldP {
        return Ok(Expansion::NSymFactored(macqt::bold_p(alpha).convert(basis)?));
    }
    let x = nsym_member(family, alpha).expect("polynomial NSym family");
    Ok(Expansion::NSym(x.convert(basis)?))
}

/// A transition matrix from a family to `s` (NSym) or `F` (QSym).
#[derive(Clone, Debug, PartialEq)]
pub enum TransitionMatrix {
    Poly(LabeledMatrix<QTScalar>),
    Factored(LabeledMatrix<FactoredScalar>),
}

impl TransitionMatrix {
    pub fn render(&self, format: Format) -> Result<String> {
        match self {
            TransitionMatrix::Poly(m) => render_matrix(m, format),
            TransitionMatrix::Factored(m) => render_matrix(m, format),
        }
    }
}

/// Row `α`, column `β`: the coefficient of `s_β` (or `F_β`) in `family_α`, both in phi order.
pub fn transition_matrix(family: Family, n: usize) -> Result<TransitionMatrix> {
    if !(1..=12).contains(&n) {
        return Err(Error::OutOfRange(format!("matrices need 1 ≤ n ≤ 12, got {n}")));
    }
    let comps = all_compositions(n);
    let k = comps.len();
    Ok(match family {
        Family::BoldP => {
            let rows: Vec<_> = comps.iter().map(|a| macqt::bold_p(a).to_s()).collect();
            TransitionMatrix::Factored(LabeledMatrix::square(
                n,
                Matrix::from_fn(k, k, |r, c| rows[r].coefficient(&comps[c])),
            )?)
        }
        Family::Pqt => {
            let rows: Vec<_> = comps.iter().map(p_qt).collect();
            TransitionMatrix::Factored(LabeledMatrix::square(
                n,
                Matrix::from_fn(k, k, |r, c| rows[r].coefficient(&comps[c])),
            )?)
        }
        Family::Pq | Family::Gq => {
            let f = if family == Family::Pq { p_q } else { g_q_hivert };
            let rows: Vec<_> = comps.iter().map(f).collect();
            TransitionMatrix::Poly(LabeledMatrix::square(
                n,
                Matrix::from_fn(k, k, |r, c| rows[r].coefficient(&comps[c])),
            )?)
        }
        _ => {
            let rows: Vec<_> = comps.iter().map(|a| nsym_member(family, a).expect("polynomial family")).collect();
            TransitionMatrix::Poly(LabeledMatrix::square(
                n,
                Matrix::from_fn(k, k, |r, c| rows[r].coefficient(&comps[c])),
            )?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;

    #[test]
    fn expansions() {
        let x = expand(Family::Hq, &comp![1, 1, 1], "s").unwrap();
        assert_eq!(x.to_string(), "s(1,1,1) + q*s(2,1) + q^2*s(1,2) + q^3*s(3)");
        assert_eq!(expand(Family::Htilde, &comp![2], "s").unwrap().to_string(), "q*s(1,1) + s(2)");
        assert_eq!(expand(Family::S, &comp![2], "s").unwrap().to_string(), "s(2)");
        assert_eq!(expand(Family::Pq, &comp![2], "F").unwrap().to_string(), "-q*F(1,1) + F(2)");
        assert!(expand(Family::Pq, &comp![2], "s").is_err());
        assert!(expand(Family::Hq, &comp![2], "F").is_err());
        assert!(matches!(expand(Family::Pqt, &comp![2], "F").unwrap(), Expansion::QSymFactored(_)));
        assert!(matches!(expand(Family::BoldP, &comp![2], "s").unwrap(), Expansion::NSymFactored(_)));
    }

    #[test]
    fn matrices() {
        let TransitionMatrix::Poly(m) = transition_matrix(Family::Hq, 2).unwrap() else { panic!() };
        assert_eq!(m.entries.get(1, 0), &QTScalar::qt(1, 0));
        assert!(transition_matrix(Family::Hq, 0).is_err());
        assert!(transition_matrix(Family::Hq, 13).is_err());
        assert!(matches!(transition_matrix(Family::Pqt, 2).unwrap(), TransitionMatrix::Factored(_)));
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }
}
