use serde::{Deserialize, Serialize};

use crate::abelian::{normalize, AbelianGroup, Element};
use crate::error::{Error, Result};
use crate::kprofile::Table;
use crate::num::gcd;
use crate::Int;

/// Cap on the number of elements enumerated by the brute-force quotient.
pub const MAX_RING_ORDER: u128 = 1 << 16;

/// A finite commutative ring in which every element is nilpotent, given by
/// its additive group and the products of additive generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteNilRing {
    additive: AbelianGroup,
    mult: Table,
}

/// `{"factors": [...], "labels": [...], "mult": [[i, j, [c...]], ...]}`;
/// omitted products are zero.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingRepr {
    factors: Vec<Int>,
    labels: Vec<String>,
    #[serde(default)]
    mult: Vec<(usize, usize, Vec<Int>)>,
}

impl FiniteNilRing {
    pub fn new(additive: AbelianGroup, mult: Table) -> Result<Self> {
        if !additive.is_finite() {
            return Err(Error::unsupported(format!(
                "ring with additive group {} is infinite; pass its n-primary part",
                additive.pretty()
            )));
        }
        let k = additive.ngens();
        if mult.shape() != (k, k) {
            return Err(Error::input(format!("{k} generators but a {:?} product table", mult.shape())));
        }
        let ring = FiniteNilRing { additive, mult };
        ring.check()?;
        Ok(ring)
    }

    /// Ring with identically zero multiplication.
    pub fn zero_product(additive: AbelianGroup) -> Result<Self> {
        let k = additive.ngens();
        let mult = Table::zero(k, k, &additive);
        Self::new(additive, mult)
    }

    /// Builds a ring from cyclic orders in any order (entries of 1 allowed)
    /// and sparse generator products, normalizing the additive group.
    pub fn from_structure(orders: &[Int], labels: &[String], products: &[(usize, usize, Vec<Int>)]) -> Result<Self> {
        let k = orders.len();
        if labels.len() != k {
            return Err(Error::input("label count does not match factor count"));
        }
        if orders.contains(&0) {
            return Err(Error::unsupported("free summands make the ring infinite; pass its n-primary part"));
        }
        let mut raw = vec![vec![0 as Int; k]; k * k];
        for (i, j, c) in products {
            if *i >= k || *j >= k || c.len() != k {
                return Err(Error::input(format!("malformed product entry ({i}, {j}, {c:?})")));
            }
            raw[i * k + j] = c.clone();
        }
        let pres = normalize(orders, labels)?;
        for i in 0..k {
            for j in 0..k {
                let d = gcd(orders[i], orders[j]);
                let killed: Vec<Int> = raw[i * k + j].iter().map(|&c| c * d).collect();
                if !pres.express(&killed)?.is_zero() {
                    return Err(Error::Construction {
                        identity: "products respect additive orders".into(),
                        witness: format!("{} · {}", labels[i], labels[j]),
                    });
                }
            }
        }
        let group = pres.group.clone();
        let m = group.ngens();
        let lifts: Vec<Vec<Int>> = (0..m).map(|a| pres.lift(&group.gen(a))).collect::<Result<_>>()?;
        let mult = Table::from_fn(m, m, &group, |a, b| {
            let mut acc = vec![0 as Int; k];
            for (i, &x) in lifts[a].iter().enumerate() {
                for (j, &y) in lifts[b].iter().enumerate() {
                    if x == 0 || y == 0 {
                        continue;
                    }
                    let xy = x.checked_mul(y).ok_or(Error::Overflow("ring structure"))?;
                    for (t, &c) in raw[i * k + j].iter().enumerate() {
                        acc[t] = xy
                            .checked_mul(c)
                            .and_then(|v| acc[t].checked_add(v))
                            .ok_or(Error::Overflow("ring structure"))?;
                    }
                }
            }
            pres.express(&acc)
        })?;
        Self::new(group, mult)
    }

    pub fn additive(&self) -> &AbelianGroup {
        &self.additive
    }

    pub fn table(&self) -> &Table {
        &self.mult
    }

    pub fn order(&self) -> u128 {
        self.additive.order().expect("finite ring")
    }

    pub fn elements(&self) -> Result<Vec<Element>> {
        if self.order() > MAX_RING_ORDER {
            return Err(Error::Resource { what: "ring order".into(), limit: MAX_RING_ORDER as usize });
        }
        self.additive.elements(MAX_RING_ORDER as usize)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.additive.add(a, b)
    }

    pub fn scale(&self, k: Int, a: &Element) -> Result<Element> {
        self.additive.scale(k, a)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.mult.eval(&a.0, &b.0, &self.additive)
    }

    pub fn show(&self, a: &Element) -> String {
        self.additive.show(a)
    }

    /// Generators commute, products associate on generator triples and every
    /// generator is nilpotent. Sums of commuting nilpotents are nilpotent, so
    /// this covers every element.
    fn check(&self) -> Result<()> {
        let g = &self.additive;
        // entries must be well defined: gcd(d_a, d_b) · (a·b) = 0
        for a in 0..g.ngens() {
            for b in 0..g.ngens() {
                let e = self.mult.get(a, b);
                let killed = g.scale(gcd(g.factors()[a], g.factors()[b]), e)?;
                if !killed.is_zero() {
                    return Err(Error::Construction {
                        identity: "products respect additive orders".into(),
                        witness: format!("{} · {}", g.labels()[a], g.labels()[b]),
                    });
                }
            }
        }
        let gens = g.gens();
        for (a, x) in gens.iter().enumerate() {
            for (b, y) in gens.iter().enumerate() {
                if self.mul(x, y)? != self.mul(y, x)? {
                    return Err(Error::Construction {
                        identity: "commutativity".into(),
                        witness: format!("{} · {}", g.labels()[a], g.labels()[b]),
                    });
                }
                let xy = self.mul(x, y)?;
                for (c, z) in gens.iter().enumerate() {
                    if self.mul(&xy, z)? != self.mul(x, &self.mul(y, z)?)? {
                        return Err(Error::Construction {
                            identity: "associativity".into(),
                            witness: format!("{} · {} · {}", g.labels()[a], g.labels()[b], g.labels()[c]),
                        });
                    }
                }
            }
        }
        // R^k strictly decreases until zero, so nilpotency shows up within
        // (number of prime factors of |R|) + 1 steps.
        let bound = prime_length(self.order()) + 1;
        for (a, x) in gens.iter().enumerate() {
            let mut p = x.clone();
            let mut steps = 0;
            while !p.is_zero() {
                if steps > bound {
                    return Err(Error::Construction {
                        identity: "nilpotency".into(),
                        witness: format!("powers of {} do not vanish", g.labels()[a]),
                    });
                }
                p = self.mul(&p, x)?;
                steps += 1;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let repr = RingRepr {
            factors: self.additive.factors().to_vec(),
            labels: self.additive.labels().to_vec(),
            mult: self.mult.sparse(),
        };
        serde_json::to_value(repr).expect("ring serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let repr: RingRepr = serde_json::from_value(v.clone()).map_err(|e| Error::input(format!("ring JSON: {e}")))?;
        Self::from_structure(&repr.factors, &repr.labels, &repr.mult)
    }
}

fn prime_length(mut m: u128) -> usize {
    let mut count = 0;
    let mut p = 2;
    while p * p <= m {
        while m.is_multiple_of(p) {
            m /= p;
            count += 1;
        }
        p += 1;
    }
    count + usize::from(m > 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn truncated_polynomial_ring() {
        // Z_2[t]/(t^3) augmentation ideal: t, t^2
        let r = FiniteNilRing::from_structure(&[2, 2], &labels(&["t", "t2"]), &[(0, 0, vec![0, 1])]).unwrap();
        assert_eq!(r.order(), 4);
        let t = r.additive().gen(0);
        let t2 = r.mul(&t, &t).unwrap();
        assert_eq!(r.show(&t2), "t2");
        assert!(r.mul(&t2, &t).unwrap().is_zero());
    }

    #[test]
    fn non_nilpotent_and_noncommutative_tables_are_rejected() {
        let idem = FiniteNilRing::from_structure(&[2], &labels(&["e"]), &[(0, 0, vec![1])]);
        assert!(matches!(idem, Err(Error::Construction { ref identity, .. }) if identity == "nilpotency"));
        let skew = FiniteNilRing::from_structure(&[2, 2, 2], &labels(&["a", "b", "c"]), &[(0, 1, vec![0, 0, 1])]);
        assert!(matches!(skew, Err(Error::Construction { ref identity, .. }) if identity == "commutativity"));
        let free = FiniteNilRing::from_structure(&[0], &labels(&["x"]), &[]);
        assert!(matches!(free, Err(Error::Unsupported(_))));
    }

    #[test]
    fn products_must_respect_orders() {
        // a has order 2 but a·a = b of order 4
        let bad = FiniteNilRing::from_structure(&[2, 4], &labels(&["a", "b"]), &[(0, 0, vec![0, 1])]);
        assert!(bad.is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = FiniteNilRing::from_structure(&[4, 2], &labels(&["t", "t2"]), &[(0, 0, vec![0, 1])]).unwrap();
        let v = r.to_json();
        let back = FiniteNilRing::from_json(&v).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), serde_json::to_string(&v).unwrap());
        assert!(FiniteNilRing::from_json(&serde_json::json!({"factors": [2], "labels": ["a"], "extra": 1})).is_err());
    }
}
