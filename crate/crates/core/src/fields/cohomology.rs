use serde::Serialize;

use crate::abelian::{tensor, tensor_zn, tor, tor_zn, AbelianGroup};
use crate::error::{Error, Result};
use crate::kprofile::{KProfile, SpaceExpr};
use crate::Int;

/// Integral cohomology `H^k(X)` for `k = 1, 2, ...`, optionally with a bound
/// on the dimension of `X` beyond which every group vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyProfile {
    groups: Vec<AbelianGroup>,
    dim: Option<usize>,
}

impl CohomologyProfile {
    /// `groups[i]` is `H^{i+1}(X)`.
    pub fn new(groups: Vec<AbelianGroup>, dim: Option<usize>) -> Result<Self> {
        if let Some(d) = dim {
            if let Some(k) = (d + 1..=groups.len()).find(|&k| !groups[k - 1].is_trivial()) {
                return Err(Error::input(format!("H^{k} is nonzero above the stated dimension {d}")));
            }
        }
        Ok(CohomologyProfile { groups, dim })
    }

    pub fn from_factors(groups: &[&[Int]], dim: Option<usize>) -> Result<Self> {
        let groups = groups.iter().map(|f| AbelianGroup::from_factors(f)).collect::<Result<_>>()?;
        Self::new(groups, dim)
    }

    pub fn groups(&self) -> &[AbelianGroup] {
        &self.groups
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    /// `H^k(X)` for `k >= 1`; zero past the end of the list.
    pub fn h(&self, k: usize) -> AbelianGroup {
        assert!(k >= 1, "cohomology is indexed from degree 1");
        self.groups.get(k - 1).cloned().unwrap_or_else(AbelianGroup::trivial)
    }

    /// Highest degree that can be nonzero, or an error when the list ends
    /// on a nonzero group and no dimension was stated.
    fn top(&self) -> Result<usize> {
        match self.dim {
            Some(d) => Ok(d),
            None => match self.groups.last() {
                Some(g) if !g.is_trivial() => Err(Error::input(format!(
                    "cohomology list ends on nonzero H^{} = {}; state a dimension bound",
                    self.groups.len(),
                    g.pretty()
                ))),
                _ => Ok(self.groups.len()),
            },
        }
    }

    /// Whether `Tor(H^k, Z_n) = 0` for every `k`.
    pub fn is_tor_free(&self, n: Int) -> Result<bool> {
        for g in &self.groups {
            if !tor_zn(g, n)?.is_trivial() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Cohomology of a catalog expression, by reduced Künneth on smash
    /// products and `X × Y ≃ X ∨ Y ∨ X ∧ Y` stably for products.
    pub fn of_expr(expr: &SpaceExpr) -> Result<Self> {
        let (reduced, dim) = reduced_cohomology(expr)?;
        Self::new(reduced.into_iter().skip(1).collect(), Some(dim))
    }
}

/// Reduced cohomology from degree 0, padded to the dimension, and the
/// dimension.
fn reduced_cohomology(expr: &SpaceExpr) -> Result<(Vec<AbelianGroup>, usize)> {
    let sparse = |dim: usize, entries: &[(usize, AbelianGroup)]| {
        let mut v = vec![AbelianGroup::trivial(); dim + 1];
        for (k, g) in entries {
            v[*k] = g.clone();
        }
        (v, dim)
    };
    Ok(match expr {
        SpaceExpr::Point => sparse(0, &[]),
        SpaceExpr::Sphere(k) => sparse(*k as usize, &[(*k as usize, AbelianGroup::free(1))]),
        SpaceExpr::Moore(m) => sparse(2, &[(2, AbelianGroup::cyclic(*m, "g"))]),
        SpaceExpr::ProjectiveSpace(k) => {
            let entries: Vec<(usize, AbelianGroup)> =
                (1..=*k as usize).map(|i| (2 * i, AbelianGroup::free(1))).collect();
            sparse(2 * *k as usize, &entries)
        }
        SpaceExpr::Susp(e) => {
            let (mut v, d) = reduced_cohomology(e)?;
            v.insert(0, AbelianGroup::trivial());
            (v, d + 1)
        }
        SpaceExpr::Smash(a, b) => smash(&reduced_cohomology(a)?, &reduced_cohomology(b)?)?,
        SpaceExpr::Prod(a, b) => product(&reduced_cohomology(a)?, &reduced_cohomology(b)?)?,
        SpaceExpr::MnXSigmaMn(m) => {
            let moore = SpaceExpr::Moore(*m);
            product(&reduced_cohomology(&moore)?, &reduced_cohomology(&SpaceExpr::Susp(Box::new(moore)))?)?
        }
    })
}

fn smash(
    (x, dx): &(Vec<AbelianGroup>, usize),
    (y, dy): &(Vec<AbelianGroup>, usize),
) -> Result<(Vec<AbelianGroup>, usize)> {
    let dim = dx + dy;
    let mut out = vec![AbelianGroup::trivial(); dim + 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] = out[i + j].direct_sum(&tensor(a, b)?)?;
            if i + j >= 1 {
                out[i + j - 1] = out[i + j - 1].direct_sum(&tor(a, b)?)?;
            }
        }
    }
    Ok((out, dim))
}

fn product(x: &(Vec<AbelianGroup>, usize), y: &(Vec<AbelianGroup>, usize)) -> Result<(Vec<AbelianGroup>, usize)> {
    let (mut out, dim) = smash(x, y)?;
    for part in [&x.0, &y.0] {
        for (k, g) in part.iter().enumerate() {
            out[k] = out[k].direct_sum(g)?;
        }
    }
    Ok((out, dim))
}

/// `|H^m(X; Z_n)| = |H^m ⊗ Z_n| · |Tor(H^{m+1}, Z_n)|`
fn order_mod_n(c: &CohomologyProfile, m: usize, n: Int) -> Result<u128> {
    let a = tensor_zn(&c.h(m), n)?.order().ok_or(Error::Overflow("cohomology order"))?;
    let b = tor_zn(&c.h(m + 1), n)?.order().ok_or(Error::Overflow("cohomology order"))?;
    a.checked_mul(b).ok_or(Error::Overflow("cohomology order"))
}

/// `∏_{k>=1} |H^{2k}(X; Z_n)|`
pub fn heven_order(c: &CohomologyProfile, n: Int) -> Result<u128> {
    if n < 2 {
        return Err(Error::input(format!("modulus must be at least 2, got {n}")));
    }
    let top = c.top()?;
    let mut total: u128 = 1;
    for m in (2..=top).step_by(2) {
        total = total.checked_mul(order_mod_n(c, m, n)?).ok_or(Error::Overflow("cohomology order"))?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    /// `|K̃^0(X) ⊗ Z_n|`
    pub tensor_order: u128,
    /// `|H̃^even(X; Z_n)|`
    pub heven_order: u128,
    pub connected: bool,
    pub tor_free: bool,
    /// The identity is asserted only for connected `X` with `Tor(H^*, Z_n) = 0`.
    pub asserted: bool,
    pub equal: bool,
}

impl CountReport {
    /// False only when the identity was asserted and failed.
    pub fn passed(&self) -> bool {
        !self.asserted || self.equal
    }

    pub fn text(&self) -> String {
        let status = match (self.asserted, self.equal) {
            (true, true) => "identity holds".to_string(),
            (true, false) => "identity FAILS".to_string(),
            (false, _) => {
                let why = if !self.connected { "space is not connected" } else { "Tor(H^*, Z_n) is nonzero" };
                format!("not asserted: {why}")
            }
        };
        format!("|K̃^0 ⊗ Z_n| = {}, |H̃^even(;Z_n)| = {}: {status}", self.tensor_order, self.heven_order)
    }
}

/// Compares `|K̃^0(X) ⊗ Z_n|` with `|H̃^even(X; Z_n)|`.
pub fn dadarlat_count_check(p: &KProfile, c: &CohomologyProfile, n: Int) -> Result<CountReport> {
    let tensor_order = tensor_zn(p.red(0), n)?.order().ok_or(Error::Overflow("tensor order"))?;
    let heven = heven_order(c, n)?;
    let tor_free = c.is_tor_free(n)?;
    let connected = p.is_connected();
    let asserted = tor_free && connected;
    Ok(CountReport { tensor_order, heven_order: heven, connected, tor_free, asserted, equal: tensor_order == heven })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kprofile::{catalog, parse_expr};

    fn of(s: &str) -> CohomologyProfile {
        CohomologyProfile::of_expr(&parse_expr(s).unwrap()).unwrap()
    }

    #[test]
    fn heven_examples() {
        for n in 2..=6 {
            assert_eq!(heven_order(&of("S(2)"), n).unwrap(), n as u128);
            assert_eq!(heven_order(&of("CP(2)"), n).unwrap(), (n * n) as u128);
        }
        assert_eq!(heven_order(&of("M(3)"), 3).unwrap(), 3);
        let cp2 = CohomologyProfile::from_factors(&[&[], &[0], &[], &[0]], Some(4)).unwrap();
        assert_eq!(heven_order(&cp2, 5).unwrap(), 25);
    }

    #[test]
    fn truncated_profiles_need_a_dimension() {
        let c = CohomologyProfile::from_factors(&[&[], &[0]], None).unwrap();
        assert!(matches!(heven_order(&c, 2), Err(Error::Input(_))));
        let c = CohomologyProfile::from_factors(&[&[], &[0]], Some(2)).unwrap();
        assert_eq!(heven_order(&c, 2).unwrap(), 2);
        assert!(CohomologyProfile::from_factors(&[&[], &[0], &[2]], Some(2)).is_err());
    }

    #[test]
    fn kunneth_examples() {
        let c = of("prod(S(2),S(2))");
        assert_eq!(c.h(2), AbelianGroup::free(2));
        assert_eq!(c.h(4), AbelianGroup::free(1));
        // M_3 ∧ M_3: H^4 = Z_3 ⊗ Z_3, H^3 = Tor(Z_3, Z_3)
        let c = of("smash(M(3),M(3))");
        assert_eq!(c.h(4), AbelianGroup::from_factors(&[3]).unwrap());
        assert_eq!(c.h(3), AbelianGroup::from_factors(&[3]).unwrap());
        assert_eq!(of("susp(S(1))").h(2), AbelianGroup::free(1));
        assert_eq!(of("smash(S(0),S(3))").h(3), AbelianGroup::free(1));
    }

    #[test]
    fn count_identity_examples() {
        for n in [2, 3, 6] {
            for (expr, expected) in [("S(2)", n), ("prod(S(2),S(2))", n * n * n), ("CP(2)", n * n)] {
                let p = catalog(&parse_expr(expr).unwrap(), n, None).unwrap();
                let r = dadarlat_count_check(&p, &of(expr), n).unwrap();
                assert!(r.asserted && r.equal, "{expr} n={n}: {r:?}");
                assert_eq!(r.tensor_order, expected as u128);
            }
        }
    }

    #[test]
    fn moore_space_fails_the_hypothesis() {
        let p = catalog(&parse_expr("M(3)").unwrap(), 3, None).unwrap();
        let r = dadarlat_count_check(&p, &of("M(3)"), 3).unwrap();
        assert!(!r.tor_free && !r.asserted && r.passed());
        assert_eq!((r.tensor_order, r.heven_order), (3, 3));
    }
}
