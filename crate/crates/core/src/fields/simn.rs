use std::collections::HashMap;

use serde::Serialize;

use super::ring::FiniteNilRing;
use crate::abelian::{tensor_zn, Element};
use crate::error::{Error, Result};
use crate::num::is_primary;
use crate::Int;

/// `{"classes": N, "tensor_order": M, "inequality": bool}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub classes: u128,
    pub tensor_order: u128,
    pub inequality: bool,
}

fn check_input(r: &FiniteNilRing, n: Int) -> Result<()> {
    if n < 2 {
        return Err(Error::input(format!("modulus must be at least 2, got {n}")));
    }
    if let Some(d) = r.additive().factors().iter().find(|&&d| !is_primary(d, n)) {
        return Err(Error::unsupported(format!(
            "summand Z_{d} of {} is not {n}-primary; pass the {n}-primary part",
            r.additive().pretty()
        )));
    }
    Ok(())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Classes of `a ~ b` iff `b = a + n·z + a·z` for some `z`, closed
/// transitively. Classes are listed by their least element, each class in
/// lexicographic order.
pub fn sim_n_quotient(r: &FiniteNilRing, n: Int) -> Result<Vec<Vec<Element>>> {
    check_input(r, n)?;
    let g = r.additive();
    let elements = r.elements()?;
    let index: HashMap<&Element, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let gens = g.gens();
    let mut uf = UnionFind((0..elements.len()).collect());
    for (ia, a) in elements.iter().enumerate() {
        // column j of (n + a)· on generator j
        let cols: Vec<Element> = gens.iter().map(|e| g.add(&g.scale(n, e)?, &r.mul(a, e)?)).collect::<Result<_>>()?;
        for z in &elements {
            let mut v = a.0.clone();
            for (j, &c) in z.0.iter().enumerate() {
                if c != 0 {
                    for (t, vt) in v.iter_mut().enumerate() {
                        *vt = (*vt + c * cols[j].0[t]) % g.factors()[t];
                    }
                }
            }
            let b = g.reduce(&v)?;
            uf.union(ia, index[&b]);
        }
    }
    let mut classes: Vec<Vec<Element>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        let root = uf.find(i);
        let s = *slot.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[s].push(e.clone());
    }
    Ok(classes)
}

/// Number of `~_n` classes against `|R ⊗ Z_n|`; the inequality is
/// `classes >= tensor_order`.
pub fn lemma_tec_check(r: &FiniteNilRing, n: Int) -> Result<LemmaReport> {
    let classes = sim_n_quotient(r, n)?.len() as u128;
    let tensor_order = tensor_zn(r.additive(), n)?.order().expect("finite");
    Ok(LemmaReport { classes, tensor_order, inequality: classes >= tensor_order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;

    fn ring(orders: &[Int], names: &[&str], products: &[(usize, usize, Vec<Int>)]) -> FiniteNilRing {
        let labels: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        FiniteNilRing::from_structure(orders, &labels, products).unwrap()
    }

    #[test]
    fn trivial_ring_has_one_class() {
        let r = FiniteNilRing::zero_product(AbelianGroup::trivial()).unwrap();
        assert_eq!(sim_n_quotient(&r, 2).unwrap().len(), 1);
        assert_eq!(lemma_tec_check(&r, 5).unwrap(), LemmaReport { classes: 1, tensor_order: 1, inequality: true });
    }

    #[test]
    fn square_zero_cyclic_ring_is_discrete() {
        for n in 2..=6 {
            let r = ring(&[n], &["g"], &[]);
            let classes = sim_n_quotient(&r, n).unwrap();
            assert_eq!(classes.len(), n as usize);
            assert!(classes.iter().all(|c| c.len() == 1));
        }
    }

    #[test]
    fn z4_with_square_zero_generator() {
        let r = ring(&[4], &["t"], &[]);
        let classes = sim_n_quotient(&r, 2).unwrap();
        let shown: Vec<Vec<Int>> = classes.iter().map(|c| c.iter().map(|e| e.0[0]).collect()).collect();
        assert_eq!(shown, vec![vec![0, 2], vec![1, 3]]);
        let rep = lemma_tec_check(&r, 2).unwrap();
        assert_eq!((rep.classes, rep.tensor_order, rep.inequality), (2, 2, true));
    }

    #[test]
    fn zero_product_squares() {
        let r = FiniteNilRing::zero_product(AbelianGroup::from_factors(&[2, 2]).unwrap()).unwrap();
        assert_eq!(lemma_tec_check(&r, 2).unwrap(), LemmaReport { classes: 4, tensor_order: 4, inequality: true });
    }

    #[test]
    fn inequality_needs_the_filtration_hypothesis() {
        // Z_2[t]/(t^3) has graded pieces Z_2, which is not Tor-free against
        // Z_2; the count drops below |R ⊗ Z_2|.
        let r = ring(&[2, 2], &["t", "t2"], &[(0, 0, vec![0, 1])]);
        let rep = lemma_tec_check(&r, 2).unwrap();
        assert_eq!((rep.classes, rep.tensor_order, rep.inequality), (3, 4, false));
    }

    #[test]
    fn non_primary_input_is_rejected() {
        let r = ring(&[6], &["g"], &[]);
        assert!(matches!(sim_n_quotient(&r, 2), Err(Error::Unsupported(_))));
        assert!(matches!(sim_n_quotient(&r, 1), Err(Error::Input(_))));
        // Z_4 is 2-primary
        assert!(sim_n_quotient(&ring(&[4], &["t"], &[]), 2).is_ok());
    }
}
