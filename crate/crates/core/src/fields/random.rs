use rand::Rng;

use super::ring::FiniteNilRing;
use crate::error::{Error, Result};
use crate::Int;

const VARIABLES: [&str; 3] = ["x", "y", "z"];

fn monomial_label(e: &[u32]) -> String {
    let mut s = String::new();
    for (v, &k) in VARIABLES.iter().zip(e) {
        match k {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}^{k}")),
        }
    }
    s
}

/// Random finite model of a filtered ring with free graded pieces.
///
/// Takes a truncated monomial ring `R` (free over Z on a random
/// divisor-closed set of nonconstant monomials in up to three variables,
/// products outside the set vanish, `R^m = 0`) and returns `R / I` with
/// `I = ⊕_k n^(m-k) R_k`, where `R_k` is spanned by monomials of degree `k`.
/// Since `n^(m-k) μ = (n + a) Σ_j (-a)^j n^(m-k-1-j) μ` for every `a`, `I`
/// lies in every `(n + a)R`, so `~_n` on `R / I` has the same classes as on
/// the localization of `R`, while `|R / I ⊗ Z_n| = |R ⊗ Z_n|`. The monomial
/// basis ordered by degree makes the structure constants strictly upper
/// triangular.
pub fn filtered_monomial_ring<G: Rng>(rng: &mut G, n: Int, max_order: u128) -> Result<FiniteNilRing> {
    if n < 2 {
        return Err(Error::input(format!("modulus must be at least 2, got {n}")));
    }
    if (n as u128) * (n as u128) > max_order {
        return Err(Error::input(format!("order bound {max_order} is below {n}^2")));
    }
    loop {
        let vars = rng.gen_range(1..=VARIABLES.len());
        let max_degree = rng.gen_range(1..=4u32);
        let monomials = choose_monomials(rng, vars, max_degree);
        let m = monomials.iter().map(|e| e.iter().sum::<u32>()).max().expect("nonempty") + 1;
        let orders: Vec<Int> = monomials.iter().map(|e| n.pow(m - e.iter().sum::<u32>())).collect();
        let order = orders.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128).filter(|&o| o <= max_order));
        if order.is_none() {
            continue;
        }
        let labels: Vec<String> = monomials.iter().map(|e| monomial_label(e)).collect();
        let mut products = Vec::new();
        for (i, a) in monomials.iter().enumerate() {
            for (j, b) in monomials.iter().enumerate() {
                let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(t) = monomials.iter().position(|e| *e == prod) {
                    let mut c = vec![0; monomials.len()];
                    c[t] = 1;
                    products.push((i, j, c));
                }
            }
        }
        return FiniteNilRing::from_structure(&orders, &labels, &products);
    }
}

/// Random nonempty set of nonconstant exponent vectors closed under
/// dividing by a variable (down to degree one), sorted by degree.
fn choose_monomials<G: Rng>(rng: &mut G, vars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut all: Vec<Vec<u32>> = vec![vec![0; vars]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for e in &all {
            for v in 0..vars {
                let mut f = e.clone();
                f[v] += 1;
                if !next.contains(&f) && !all.contains(&f) {
                    next.push(f);
                }
            }
        }
        all.extend(next);
    }
    all.retain(|e| e.iter().sum::<u32>() > 0);
    all.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for e in all {
        let closed = (0..vars).filter(|&v| e[v] > 0).all(|v| {
            let mut f = e.clone();
            f[v] -= 1;
            f.iter().all(|&x| x == 0) || kept.contains(&f)
        });
        if closed && (kept.is_empty() || rng.gen_bool(0.6)) {
            kept.push(e);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::lemma_tec_check;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_rings_respect_bounds() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in [2, 3, 4] {
            for _ in 0..10 {
                let r = filtered_monomial_ring(&mut rng, n, 256).unwrap();
                assert!(r.order() <= 256);
                assert!(r.additive().factors().iter().all(|&d| crate::num::is_primary(d, n)));
                assert!(lemma_tec_check(&r, n).unwrap().inequality);
            }
        }
    }

    #[test]
    fn labels_name_monomials() {
        assert_eq!(monomial_label(&[2, 1]), "x^2y");
        assert_eq!(monomial_label(&[0, 0, 1]), "z");
    }
}
