use serde::Serialize;

use crate::abelian::group::{combination, AbelianGroup, Element, GroupHom};
use crate::abelian::presentation::from_presentation;
use crate::error::{Error, Result};
use crate::snf::{echelon_coords, hermite_rows, smith_normal_form};
use crate::{Int, IntMatrix};

/// Subgroup of a finitely generated abelian group, stored as the Hermite
/// basis of its preimage lattice in `Z^k`. Two subgroups are equal exactly
/// when their bases are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: AbelianGroup,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

fn relation_vectors(g: &AbelianGroup) -> Vec<Vec<Int>> {
    g.factors()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| {
            let mut v = vec![0; g.ngens()];
            v[i] = d;
            v
        })
        .collect()
}

impl Subgroup {
    /// Subgroup generated by the given coordinate vectors.
    pub fn generated(ambient: &AbelianGroup, gens: &[Vec<Int>]) -> Result<Self> {
        let k = ambient.ngens();
        let mut rows = relation_vectors(ambient);
        for g in gens {
            if g.len() != k {
                return Err(Error::input(format!("generator of length {} in rank {k}", g.len())));
            }
            rows.push(g.clone());
        }
        let (basis, pivots) = hermite_rows(&IntMatrix::from_rows(&rows, k)?)?;
        Ok(Subgroup { ambient: ambient.clone(), basis, pivots })
    }

    pub fn from_elements(ambient: &AbelianGroup, gens: &[Element]) -> Result<Self> {
        let v: Vec<Vec<Int>> = gens.iter().map(|e| e.0.clone()).collect();
        Self::generated(ambient, &v)
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool> {
        Ok(echelon_coords(&self.basis, &self.pivots, v)?.is_some())
    }

    /// The subgroup as an abstract group with its inclusion into the ambient.
    pub fn as_group(&self) -> Result<(AbelianGroup, GroupHom)> {
        let s = self.basis.rows();
        let mut rel_rows = Vec::new();
        for r in relation_vectors(&self.ambient) {
            let c = echelon_coords(&self.basis, &self.pivots, &r)?
                .ok_or_else(|| Error::input("relation outside its own lattice"))?;
            rel_rows.push(c);
        }
        let labels: Vec<String> = (0..s).map(|t| combination(&self.basis.row(t), self.ambient.labels())).collect();
        let pres = from_presentation(s, &IntMatrix::from_rows(&rel_rows, s)?, Some(&labels))?;
        // new generator j = sum_t to_old[t][j] * basis_t
        let incl = self.basis.transpose().mul(pres.to_old())?;
        let hom = GroupHom::new(pres.group.clone(), self.ambient.clone(), incl)?;
        Ok((pres.group, hom))
    }
}

/// Kernel, image and cokernel of a homomorphism, with their maps.
#[derive(Clone, Debug)]
pub struct Subquotients {
    pub kernel: AbelianGroup,
    pub kernel_inclusion: GroupHom,
    pub image: AbelianGroup,
    pub image_inclusion: GroupHom,
    pub cokernel: AbelianGroup,
    pub cokernel_projection: GroupHom,
}

pub fn kernel_subgroup(h: &GroupHom) -> Result<Subgroup> {
    let (dom, cod) = (h.domain(), h.codomain());
    let (k, m) = (dom.ngens(), cod.ngens());
    let finite: Vec<(usize, Int)> = cod.factors().iter().copied().enumerate().filter(|&(_, d)| d != 0).collect();
    let mut a = IntMatrix::zeros(m, k + finite.len());
    for i in 0..m {
        for j in 0..k {
            a[(i, j)] = h.matrix()[(i, j)];
        }
    }
    for (c, &(i, d)) in finite.iter().enumerate() {
        a[(i, k + c)] = d;
    }
    let snf = smith_normal_form(&a)?;
    let gens: Vec<Vec<Int>> = snf.kernel_basis().into_iter().map(|v| v[..k].to_vec()).collect();
    Subgroup::generated(dom, &gens)
}

pub fn image_subgroup(h: &GroupHom) -> Result<Subgroup> {
    let cols: Vec<Vec<Int>> = (0..h.domain().ngens()).map(|j| h.matrix().col(j)).collect();
    Subgroup::generated(h.codomain(), &cols)
}

pub fn subquotients(h: &GroupHom) -> Result<Subquotients> {
    let (kernel, kernel_inclusion) = kernel_subgroup(h)?.as_group()?;
    let (image, image_inclusion) = image_subgroup(h)?.as_group()?;
    let cod = h.codomain();
    let mut rows: Vec<Vec<Int>> = (0..h.domain().ngens()).map(|j| h.matrix().col(j)).collect();
    rows.extend(relation_vectors(cod));
    let pres = from_presentation(cod.ngens(), &IntMatrix::from_rows(&rows, cod.ngens())?, Some(cod.labels()))?;
    let cokernel_projection = GroupHom::new(cod.clone(), pres.group.clone(), pres.to_new().clone())?;
    Ok(Subquotients { kernel, kernel_inclusion, image, image_inclusion, cokernel: pres.group, cokernel_projection })
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    /// Index of the group between map `node` and map `node + 1` (cyclically).
    pub node: usize,
    pub group: String,
    pub image: String,
    pub kernel: String,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub exact: bool,
    pub nodes: Vec<NodeReport>,
}

fn node_report(node: usize, incoming: &GroupHom, outgoing: &GroupHom) -> Result<NodeReport> {
    if incoming.codomain() != outgoing.domain() {
        return Err(Error::input(format!(
            "maps {node} and {} are not composable: {} vs {}",
            node + 1,
            incoming.codomain(),
            outgoing.domain()
        )));
    }
    let im = image_subgroup(incoming)?;
    let ker = kernel_subgroup(outgoing)?;
    Ok(NodeReport {
        node,
        group: incoming.codomain().to_string(),
        image: im.as_group()?.0.to_string(),
        kernel: ker.as_group()?.0.to_string(),
        exact: im == ker,
    })
}

/// Exactness at every interior node of a chain of homomorphisms.
pub fn is_exact(sequence: &[GroupHom]) -> Result<ExactnessReport> {
    let nodes =
        sequence.windows(2).enumerate().map(|(i, w)| node_report(i, &w[0], &w[1])).collect::<Result<Vec<_>>>()?;
    Ok(ExactnessReport { exact: nodes.iter().all(|n| n.exact), nodes })
}

/// Exactness at every node of a cyclic sequence (the last map feeds the first).
pub fn is_exact_cyclic(cycle: &[GroupHom]) -> Result<ExactnessReport> {
    let len = cycle.len();
    let nodes = (0..len).map(|i| node_report(i, &cycle[i], &cycle[(i + 1) % len])).collect::<Result<Vec<_>>>()?;
    Ok(ExactnessReport { exact: nodes.iter().all(|n| n.exact), nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> AbelianGroup {
        AbelianGroup::cyclic(0, "t")
    }

    #[test]
    fn multiplication_by_minus_n_on_z() {
        let h = GroupHom::scalar(&z(), -3).unwrap();
        let s = subquotients(&h).unwrap();
        assert!(s.kernel.is_trivial());
        assert_eq!(s.image.factors(), &[0]);
        assert_eq!(s.cokernel.factors(), &[3]);
    }

    #[test]
    fn zero_map_on_zn() {
        let g = AbelianGroup::cyclic(5, "a");
        let s = subquotients(&GroupHom::zero(&g, &g)).unwrap();
        assert_eq!(s.kernel, g);
        assert!(s.image.is_trivial());
        assert_eq!(s.cokernel, g);
    }

    #[test]
    fn doubling_on_z4() {
        let g = AbelianGroup::cyclic(4, "a");
        let s = subquotients(&GroupHom::scalar(&g, 2).unwrap()).unwrap();
        assert_eq!(s.kernel.factors(), &[2]);
        assert_eq!(s.image.factors(), &[2]);
        assert_eq!(s.cokernel.factors(), &[2]);
        let two = s.kernel_inclusion.apply(&s.kernel.gen(0)).unwrap();
        assert_eq!(two, Element(vec![2]));
    }

    #[test]
    fn bockstein_row_of_a_sphere_is_exact() {
        let n = 4;
        let zn = AbelianGroup::cyclic(n, "ρt");
        let neg = GroupHom::scalar(&z(), -n).unwrap();
        let rho = GroupHom::from_rows(&z(), &zn, &[vec![1]]).unwrap();
        let out = GroupHom::zero(&zn, &AbelianGroup::trivial());
        assert!(is_exact(&[neg, rho, out]).unwrap().exact);
    }

    #[test]
    fn identity_between_zeros_is_exact_and_zero_maps_are_not() {
        let zn = AbelianGroup::cyclic(3, "a");
        let triv = AbelianGroup::trivial();
        let seq = [GroupHom::zero(&triv, &zn), GroupHom::identity(&zn), GroupHom::zero(&zn, &triv)];
        assert!(is_exact(&seq).unwrap().exact);

        let seq = [GroupHom::zero(&z(), &z()), GroupHom::zero(&z(), &z())];
        let r = is_exact(&seq).unwrap();
        assert!(!r.exact);
        assert_eq!(r.nodes[0].kernel, "Z");
    }

    #[test]
    fn non_composable_chain_is_rejected() {
        let a = GroupHom::identity(&AbelianGroup::cyclic(2, "a"));
        let b = GroupHom::identity(&AbelianGroup::cyclic(3, "b"));
        assert!(is_exact(&[a, b]).is_err());
    }
}
