use serde::Serialize;

use crate::abelian::{normalize, subquotients, AbelianGroup, Element, GroupHom};
use crate::error::{Error, Result};
use crate::kprofile::KProfile;
use crate::{Int, IntMatrix};

/// Kernels and cokernels of multiplication by `1 - [E]` on `K^0(X)` and
/// `K^1(X)`. The six-term sequence gives
/// `0 → coker0 → K_0(O_E) → ker1 → 0` and
/// `0 → coker1 → K_1(O_E) → ker0 → 0`; the extensions are left open.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PimsnerPieces {
    pub rank: Int,
    pub e_tilde: String,
    pub coker0: AbelianGroup,
    pub ker0: AbelianGroup,
    pub coker1: AbelianGroup,
    pub ker1: AbelianGroup,
    /// Matrix of `1 - [E]` on `K^0(X) = Z ⊕ K̃^0(X)` in normalized coordinates.
    pub map0: Vec<Vec<Int>>,
    pub extension: &'static str,
}

const EXTENSION_NOTE: &str = "extension not determined by the six-term sequence";

impl PimsnerPieces {
    /// `K_i(O_E)` when the relevant kernel vanishes, so no extension arises.
    pub fn k_group(&self, i: usize) -> Option<&AbelianGroup> {
        match i % 2 {
            0 => self.ker1.is_trivial().then_some(&self.coker0),
            _ => self.ker0.is_trivial().then_some(&self.coker1),
        }
    }

    pub fn text(&self) -> String {
        let line = |i: usize, sub: &AbelianGroup, quot: &AbelianGroup| match self.k_group(i) {
            Some(g) => format!("K_{i}(O_E) = {}", g.pretty()),
            None => format!("0 -> {} -> K_{i}(O_E) -> {} -> 0 ({EXTENSION_NOTE})", sub.pretty(), quot.pretty()),
        };
        format!(
            "[E] = {} + {}\ncoker0 = {}, ker0 = {}\ncoker1 = {}, ker1 = {}\n{}\n{}",
            self.rank,
            self.e_tilde,
            self.coker0.pretty(),
            self.ker0.pretty(),
            self.coker1.pretty(),
            self.ker1.pretty(),
            line(0, &self.coker0, &self.ker1),
            line(1, &self.coker1, &self.ker0),
        )
    }
}

/// Kernel and cokernel pieces for `[E] = r + ẽ` with `ẽ ∈ K̃^0(X)`.
pub fn pimsner_pieces(p: &KProfile, rank: Int, e_tilde: &Element) -> Result<PimsnerPieces> {
    if rank < 2 {
        return Err(Error::input(format!("bundle rank must be at least 2, got {rank}")));
    }
    let red0 = p.red(0);
    if !red0.contains(e_tilde) {
        return Err(Error::input(format!("{:?} is not an element of K̃^0 = {}", e_tilde.0, red0.pretty())));
    }
    let one_minus_r = 1 - rank;
    let k = red0.ngens();

    // K^0 = Z ⊕ K̃^0, raw basis (1, a_1, ..., a_k)
    let mut orders = vec![0];
    orders.extend_from_slice(red0.factors());
    let mut labels = vec!["1".to_string()];
    labels.extend(red0.labels().iter().cloned());
    let mut raw = IntMatrix::zeros(k + 1, k + 1);
    raw[(0, 0)] = one_minus_r;
    for t in 0..k {
        raw[(t + 1, 0)] = -e_tilde.0[t];
    }
    for (j, a) in red0.gens().iter().enumerate() {
        let ea = p.mult(0, e_tilde, 0, a)?;
        raw[(j + 1, j + 1)] += one_minus_r;
        for t in 0..k {
            raw[(t + 1, j + 1)] -= ea.0[t];
        }
    }
    let pres = normalize(&orders, &labels)?;
    let matrix = pres.to_new().mul(&raw)?.mul(pres.to_old())?;
    let map0 = GroupHom::new(pres.group.clone(), pres.group.clone(), matrix)?;

    let red1 = p.red(1);
    let cols: Vec<Vec<Int>> = red1
        .gens()
        .iter()
        .map(|b| {
            let eb = p.mult(0, e_tilde, 1, b)?;
            Ok(red1.sub(&red1.scale(one_minus_r, b)?, &eb)?.0)
        })
        .collect::<Result<_>>()?;
    let map1 = GroupHom::new(red1.clone(), red1.clone(), IntMatrix::from_cols(&cols, red1.ngens())?)?;

    let s0 = subquotients(&map0)?;
    let s1 = subquotients(&map1)?;
    Ok(PimsnerPieces {
        rank,
        e_tilde: red0.show(e_tilde),
        coker0: s0.cokernel,
        ker0: s0.kernel,
        coker1: s1.cokernel,
        ker1: s1.kernel,
        map0: map0.matrix().to_rows(),
        extension: EXTENSION_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kprofile::{catalog, parse_expr};

    fn profile(s: &str, n: Int) -> KProfile {
        catalog(&parse_expr(s).unwrap(), n, None).unwrap()
    }

    fn g(f: &[Int]) -> AbelianGroup {
        AbelianGroup::from_factors(f).unwrap()
    }

    #[test]
    fn cuntz_algebra_from_a_point() {
        for n in 2..=6 {
            let p = profile("point", n);
            let r = pimsner_pieces(&p, n + 1, &p.red(0).zero()).unwrap();
            assert_eq!(r.coker0, g(&[n]));
            assert!(r.ker0.is_trivial() && r.coker1.is_trivial() && r.ker1.is_trivial());
            assert_eq!(r.k_group(0), Some(&g(&[n])));
        }
    }

    #[test]
    fn two_sphere_bundles() {
        for n in 2..=5 {
            let p = profile("S(2)", n);
            let trivial = pimsner_pieces(&p, n + 1, &p.red(0).zero()).unwrap();
            assert_eq!(trivial.coker0, g(&[n, n]));
            let t = KProfile::generator(p.red(0), "t").unwrap();
            let twisted = pimsner_pieces(&p, n + 1, &t).unwrap();
            assert_eq!(twisted.coker0, g(&[n * n]));
            assert_eq!(twisted.map0, vec![vec![-n, 0], vec![-1, -n]]);
        }
    }

    #[test]
    fn circle_has_both_pieces() {
        let p = profile("S(1)", 3);
        let r = pimsner_pieces(&p, 4, &p.red(0).zero()).unwrap();
        assert_eq!(r.coker0, g(&[3]));
        assert_eq!(r.coker1, g(&[3]));
        assert!(r.text().contains("K_1(O_E) = Z_3"));
    }

    #[test]
    fn rank_below_two_is_rejected() {
        let p = profile("point", 2);
        assert!(matches!(pimsner_pieces(&p, 1, &p.red(0).zero()), Err(Error::Input(_))));
    }
}
