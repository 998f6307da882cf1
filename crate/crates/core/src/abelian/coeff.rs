//! Change of coefficients: `⊗ Z_n`, `Tor(-, Z_n)` and n-primary parts.

use crate::abelian::group::{AbelianGroup, GroupHom};
use crate::abelian::presentation::normalize;
use crate::error::{Error, Result};
use crate::num::{gcd, primary_part};
use crate::Int;

fn check_modulus(n: Int) -> Result<()> {
    if n < 2 {
        return Err(Error::input(format!("modulus must be at least 2, got {n}")));
    }
    Ok(())
}

/// `G ⊗ Z_n`: `Z ↦ Z_n`, `Z_d ↦ Z_gcd(d,n)`.
pub fn tensor_zn(g: &AbelianGroup, n: Int) -> Result<AbelianGroup> {
    check_modulus(n)?;
    let orders: Vec<Int> = g.factors().iter().map(|&d| gcd(d, n)).collect();
    Ok(normalize(&orders, g.labels())?.group)
}

/// `Tor(G, Z_n)`, the n-torsion of `G`: `Z ↦ 0`, `Z_d ↦ Z_gcd(d,n)`.
pub fn tor_zn(g: &AbelianGroup, n: Int) -> Result<AbelianGroup> {
    check_modulus(n)?;
    let orders: Vec<Int> = g.factors().iter().map(|&d| if d == 0 { 1 } else { gcd(d, n) }).collect();
    Ok(normalize(&orders, g.labels())?.group)
}

/// `G ⊗ H`: cyclic summands pair to `Z_gcd(d, e)` (with `gcd(0, 0) = 0`).
pub fn tensor(g: &AbelianGroup, h: &AbelianGroup) -> Result<AbelianGroup> {
    let mut orders = Vec::new();
    let mut labels = Vec::new();
    for (&d, a) in g.factors().iter().zip(g.labels()) {
        for (&e, b) in h.factors().iter().zip(h.labels()) {
            orders.push(gcd(d, e));
            labels.push(format!("{a}⊗{b}"));
        }
    }
    Ok(normalize(&orders, &labels)?.group)
}

/// `Tor(G, H)`: only pairs of finite summands contribute, `Z_gcd(d, e)`.
pub fn tor(g: &AbelianGroup, h: &AbelianGroup) -> Result<AbelianGroup> {
    let mut orders = Vec::new();
    let mut labels = Vec::new();
    for (&d, a) in g.factors().iter().zip(g.labels()) {
        for (&e, b) in h.factors().iter().zip(h.labels()) {
            if d > 0 && e > 0 {
                orders.push(gcd(d, e));
                labels.push(format!("Tor({a},{b})"));
            }
        }
    }
    Ok(normalize(&orders, &labels)?.group)
}

/// n-primary part of a finite group, with the projection onto it.
pub fn n_primary_projection(g: &AbelianGroup, n: Int) -> Result<GroupHom> {
    check_modulus(n)?;
    if !g.is_finite() {
        return Err(Error::unsupported(format!(
            "n-primary part of the infinite group {g}: free summands are not localized"
        )));
    }
    let orders: Vec<Int> = g.factors().iter().map(|&d| primary_part(d, n)).collect();
    let pres = normalize(&orders, g.labels())?;
    // Reduction mod the primary part of each cyclic summand is the projection.
    GroupHom::new(g.clone(), pres.group.clone(), pres.to_new().clone())
}

pub fn n_primary_part(g: &AbelianGroup, n: Int) -> Result<AbelianGroup> {
    Ok(n_primary_projection(g, n)?.codomain().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[Int]) -> AbelianGroup {
        AbelianGroup::from_factors(f).unwrap()
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_zn(&g(&[0]), 3).unwrap(), g(&[3]));
        assert_eq!(tensor_zn(&g(&[4]), 2).unwrap(), g(&[2]));
        assert!(tensor_zn(&g(&[3]), 2).unwrap().is_trivial());
        assert!(tensor_zn(&g(&[3]), 1).is_err());
    }

    #[test]
    fn tor_examples() {
        assert!(tor_zn(&g(&[0]), 5).unwrap().is_trivial());
        assert_eq!(tor_zn(&g(&[4, 4]), 4).unwrap(), g(&[4, 4]));
        assert_eq!(tor_zn(&g(&[6]), 4).unwrap(), g(&[2]));
    }

    #[test]
    fn tensor_and_tor_of_pairs() {
        assert_eq!(tensor(&g(&[4, 0]), &g(&[6])).unwrap(), g(&[2, 6]));
        assert_eq!(tensor(&g(&[0]), &g(&[0])).unwrap(), g(&[0]));
        assert_eq!(tor(&g(&[4, 0]), &g(&[6])).unwrap(), g(&[2]));
        assert!(tor(&g(&[0]), &g(&[5])).unwrap().is_trivial());
    }

    #[test]
    fn primary_examples() {
        assert_eq!(n_primary_part(&g(&[6]), 2).unwrap(), g(&[2]));
        assert_eq!(n_primary_part(&g(&[9]), 3).unwrap(), g(&[9]));
        assert!(n_primary_part(&g(&[5]), 2).unwrap().is_trivial());
        assert!(matches!(n_primary_part(&g(&[0]), 2), Err(Error::Unsupported(_))));
    }
}
