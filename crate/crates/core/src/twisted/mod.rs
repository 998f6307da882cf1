//! The twisted group law `a∘b = a + b - a·β(b)` on `K^1(X; Z_n)`, the unit
//! group `1 + T` it maps onto, subgroup closure and small-group
//! identification.

mod classify;
mod table;

pub use classify::{classify, HeisenbergMatch, StructureReport};
pub use table::SubgroupTable;

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::abelian::{image_subgroup, AbelianGroup, Element, GroupHom, Subgroup};
use crate::error::{Error, Result};
use crate::kprofile::{CarrierStatus, KProfile, Table};

/// Default bound on subgroup closures, overridable by `MOOREK_MAX_CLOSURE`.
pub const DEFAULT_MAX_CLOSURE: usize = 100_000;

/// Closure bound from the environment.
pub fn closure_limit() -> usize {
    std::env::var("MOOREK_MAX_CLOSURE").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_CLOSURE)
}

/// Carriers up to this order get an exhaustive associativity check at build
/// time; larger ones a seeded random sample.
const EXHAUSTIVE_ASSOCIATIVITY: u128 = 32;
const SAMPLED_TRIPLES: usize = 2000;

#[derive(Clone, Debug)]
pub struct TwistedGroup {
    name: String,
    modulus: crate::Int,
    /// `K^1(X; Z_n)`; elements of the group live here.
    carrier: AbelianGroup,
    /// Restriction to an additive subgroup closed under `∘`, if any, with
    /// its elements.
    support: Option<(Subgroup, HashSet<Element>)>,
    /// `K̃^0(X)`, which contains `T = image(β)`.
    k0: AbelianGroup,
    beta: GroupHom,
    /// Left action of `K̃^0` on the carrier; in degree 0 it equals the right
    /// action `a·s`.
    pairing: Table,
    /// Product on `K̃^0`.
    ring: Table,
    status: CarrierStatus,
}

fn witness(what: &str, g: &AbelianGroup, es: &[&Element]) -> String {
    let parts: Vec<String> = es.iter().map(|e| g.show(e)).collect();
    format!("{what} at ({})", parts.join(", "))
}

impl TwistedGroup {
    /// The twisted group on all of `K^1(X; Z_n)`. Refused when the additive
    /// carrier is not determined by the available data.
    pub fn build(p: &KProfile) -> Result<TwistedGroup> {
        if let CarrierStatus::Unresolved(why) = p.carrier_status() {
            return Err(Error::unsupported(format!(
                "full twisted group of {} refused: {why}; use the subgroup construction instead",
                p.name()
            )));
        }
        let tg = Self::from_profile(p, None, p.carrier_status().clone())?;
        tg.verify()?;
        Ok(tg)
    }

    /// The twisted law restricted to the additive span of `gens`, which
    /// must be closed under `∘`. The status is inherited from the profile
    /// unless `assumption_free` is set, which records that the span is
    /// independent of any stipulated splitting.
    pub fn slice(p: &KProfile, gens: &[Element], assumption_free: bool) -> Result<TwistedGroup> {
        let span = Subgroup::from_elements(p.modn(1), gens)?;
        let status = if assumption_free { CarrierStatus::Determined } else { p.carrier_status().clone() };
        let (g, incl) = span.as_group()?;
        let members = g.elements(closure_limit())?.iter().map(|e| incl.apply(e)).collect::<Result<HashSet<_>>>()?;
        let tg = Self::from_profile(p, Some((span, members)), status)?;
        for a in gens {
            for b in gens {
                let c = tg.carrier.sub(&tg.carrier.add(a, b)?, &tg.compose(a, b)?)?;
                if !tg.in_support(&c)? {
                    return Err(Error::input(format!(
                        "span is not closed under ∘: {}",
                        witness("a·β(b) leaves the span", &tg.carrier, &[a, b])
                    )));
                }
            }
        }
        tg.verify()?;
        Ok(tg)
    }

    /// Generators `ρ(1⊗u)`, `ρ(g⊗u)` and `x = λ(g⊗1)` of the Heisenberg
    /// subgroup of the `M_n × ΣM_n` profile.
    pub fn heisenberg_generators(p: &KProfile) -> Result<Vec<Element>> {
        let missing = |_| Error::input(format!("{} has no M_n × ΣM_n generators", p.name()));
        let u = KProfile::generator(p.red(1), "1⊗u").map_err(missing)?;
        let gu = KProfile::generator(p.red(1), "g⊗u").map_err(missing)?;
        let x = KProfile::generator(p.modn(1), "λ(g⊗1)").map_err(missing)?;
        Ok(vec![p.rho(1).apply(&u)?, p.rho(1).apply(&gu)?, x])
    }

    /// The subgroup spanned by [`Self::heisenberg_generators`]. The span
    /// lies in the part of the carrier that is independent of the
    /// splitting, so it carries no assumption.
    pub fn heisenberg_slice(p: &KProfile) -> Result<TwistedGroup> {
        Self::slice(p, &Self::heisenberg_generators(p)?, true)
    }

    fn from_profile(
        p: &KProfile,
        support: Option<(Subgroup, HashSet<Element>)>,
        status: CarrierStatus,
    ) -> Result<TwistedGroup> {
        if !p.modn(1).is_finite() {
            return Err(Error::unsupported("infinite carrier"));
        }
        Ok(TwistedGroup {
            name: p.name().to_string(),
            modulus: p.modulus(),
            carrier: p.modn(1).clone(),
            support,
            k0: p.red(0).clone(),
            beta: p.beta(1).clone(),
            pairing: p.act_table(0, 1).clone(),
            ring: p.ring_table(0, 0).clone(),
            status,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn modulus(&self) -> crate::Int {
        self.modulus
    }

    pub fn carrier(&self) -> &AbelianGroup {
        &self.carrier
    }

    pub fn beta(&self) -> &GroupHom {
        &self.beta
    }

    pub fn status(&self) -> &CarrierStatus {
        &self.status
    }

    /// Report text for the carrier status, if it rests on an assumption.
    pub fn assumption(&self) -> Option<String> {
        match &self.status {
            CarrierStatus::Determined => None,
            CarrierStatus::Stipulated(why) => Some(format!("assumption: {why}")),
            CarrierStatus::Unresolved(why) => Some(format!("unresolved: {why}")),
        }
    }

    fn in_support(&self, a: &Element) -> Result<bool> {
        match &self.support {
            None => Ok(self.carrier.contains(a)),
            Some((_, members)) => Ok(members.contains(a)),
        }
    }

    fn check(&self, a: &Element) -> Result<()> {
        if !self.in_support(a)? {
            return Err(Error::input(format!("{:?} is not an element of the twisted group of {}", a.0, self.name)));
        }
        Ok(())
    }

    /// All elements in lexicographic order of their carrier coordinates.
    pub fn elements(&self, limit: usize) -> Result<Vec<Element>> {
        match &self.support {
            None => self.carrier.elements(limit),
            Some((_, members)) => {
                if members.len() > limit {
                    return Err(Error::Resource {
                        what: format!("elements of the twisted group of {}", self.name),
                        limit,
                    });
                }
                let mut out: Vec<Element> = members.iter().cloned().collect();
                out.sort();
                Ok(out)
            }
        }
    }

    pub fn order(&self) -> Result<u128> {
        match &self.support {
            None => self.carrier.order().ok_or_else(|| Error::unsupported("infinite carrier")),
            Some((_, members)) => Ok(members.len() as u128),
        }
    }

    /// `a·s` for `a` in the carrier and `s ∈ K̃^0`.
    pub fn pair(&self, a: &Element, s: &Element) -> Result<Element> {
        self.pairing.eval(&s.0, &a.0, &self.carrier)
    }

    /// Product in `K̃^0`.
    pub fn ring_mult(&self, s: &Element, t: &Element) -> Result<Element> {
        self.ring.eval(&s.0, &t.0, &self.k0)
    }

    /// `a∘b = a + b - a·β(b)`
    pub fn compose(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        let ab = self.pair(a, &self.beta.apply(b)?)?;
        self.carrier.sub(&self.carrier.add(a, b)?, &ab)
    }

    /// `a^{∘-1} = -a·(1 - β(a))^{-1}`, expanding the inverse as the finite
    /// series `Σ β(a)^k`.
    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        let s = self.beta.apply(a)?;
        let cap = self.order()?.min(usize::MAX as u128) as usize;
        let mut acc = self.carrier.zero();
        let mut term = a.clone();
        let mut k = 0;
        while !term.is_zero() {
            if k > cap {
                return Err(Error::Construction {
                    identity: "geometric series for (1 - β(a))^{-1} terminates".into(),
                    witness: witness("no termination", &self.carrier, &[a]),
                });
            }
            acc = self.carrier.add(&acc, &term)?;
            term = self.pair(&term, &s)?;
            k += 1;
        }
        self.carrier.neg(&acc)
    }

    /// `a^{∘-1}∘b∘a`
    pub fn conjugate(&self, a: &Element, b: &Element) -> Result<Element> {
        self.compose(&self.inverse(a)?, &self.compose(b, a)?)
    }

    /// Closed form `b + a·β(b) - β(a)·b` of the conjugate.
    pub fn conjugate_formula(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        let abb = self.pair(a, &self.beta.apply(b)?)?;
        let bab = self.pair(b, &self.beta.apply(a)?)?;
        self.carrier.sub(&self.carrier.add(b, &abb)?, &bab)
    }

    /// `β̂(a) = 1 - β(a)`
    pub fn beta_hat(&self, a: &Element) -> Result<Unit> {
        self.check(a)?;
        Ok(Unit(self.beta.apply(a)?))
    }

    pub fn unit_group(&self) -> Result<UnitGroup> {
        let (t, incl) = image_subgroup(&self.beta)?.as_group()?;
        let mut elements = t.elements(closure_limit())?.iter().map(|e| incl.apply(e)).collect::<Result<Vec<_>>>()?;
        elements.sort();
        Ok(UnitGroup { k0: self.k0.clone(), ring: self.ring.clone(), elements })
    }

    /// Closure of `gens` under `∘`.
    pub fn subgroup(&self, gens: &[Element]) -> Result<SubgroupTable> {
        self.subgroup_with_limit(gens, closure_limit())
    }

    pub fn subgroup_with_limit(&self, gens: &[Element], limit: usize) -> Result<SubgroupTable> {
        for g in gens {
            self.check(g)?;
        }
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        let zero = self.carrier.zero();
        seen.insert(zero.clone());
        let mut queue = vec![zero];
        while let Some(e) = queue.pop() {
            for g in gens {
                let next = self.compose(&e, g)?;
                if seen.insert(next.clone()) {
                    if seen.len() > limit {
                        return Err(Error::Resource { what: format!("subgroup closure in {}", self.name), limit });
                    }
                    queue.push(next);
                }
            }
        }
        self.table_of(seen.into_iter().collect())
    }

    /// Multiplication table of the whole group.
    pub fn full_table(&self) -> Result<SubgroupTable> {
        self.table_of(self.elements(closure_limit())?)
    }

    fn table_of(&self, elements: Vec<Element>) -> Result<SubgroupTable> {
        let index: HashMap<&Element, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let row = elements
                .iter()
                .map(|b| {
                    let c = self.compose(a, b)?;
                    index.get(&c).copied().ok_or_else(|| {
                        Error::input(format!(
                            "element set not closed: {} ∘ {}",
                            self.carrier.show(a),
                            self.carrier.show(b)
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let identity = index[&self.carrier.zero()];
        Ok(SubgroupTable::new(elements, table, identity, self.carrier.labels().to_vec(), self.assumption()))
    }

    /// Build-time checks. Associativity of `∘` follows from the two
    /// generator identities below by bilinearity, so it is also sampled
    /// directly as a cross-check rather than proved by enumeration.
    fn verify(&self) -> Result<()> {
        let fail = |identity: &str, w: String| Err(Error::Construction { identity: identity.into(), witness: w });
        let carrier_gens: Vec<Element> = match &self.support {
            None => self.carrier.gens(),
            Some((s, _)) => {
                let (g, incl) = s.as_group()?;
                g.gens().iter().map(|e| incl.apply(e)).collect::<Result<_>>()?
            }
        };
        let k0_gens = self.k0.gens();
        for a in &carrier_gens {
            for s in &k0_gens {
                let lhs = self.beta.apply(&self.pair(a, s)?)?;
                let rhs = self.ring_mult(&self.beta.apply(a)?, s)?;
                if lhs != rhs {
                    return fail("β(a·s) = β(a)·s", witness("mismatch", &self.carrier, &[a]));
                }
                for t in &k0_gens {
                    let lhs = self.pair(&self.pair(a, s)?, t)?;
                    let rhs = self.pair(a, &self.ring_mult(s, t)?)?;
                    if lhs != rhs {
                        return fail("(a·s)·t = a·(s·t)", witness("mismatch", &self.carrier, &[a]));
                    }
                }
            }
        }
        let units = self.unit_group()?;
        let bound = units.elements.len() + 1;
        for s in &units.elements {
            let mut power = s.clone();
            let mut k = 1;
            while !power.is_zero() && k <= bound {
                power = self.ring_mult(&power, s)?;
                k += 1;
            }
            if !power.is_zero() {
                return fail("every element of T is nilpotent", witness("non-nilpotent", &self.k0, &[s]));
            }
        }
        let elements = self.elements(closure_limit())?;
        let zero = self.carrier.zero();
        for a in &elements {
            if self.compose(a, &zero)? != *a || self.compose(&zero, a)? != *a {
                return fail("0 is a two-sided identity", witness("identity fails", &self.carrier, &[a]));
            }
            let inv = self.inverse(a)?;
            if !self.compose(a, &inv)?.is_zero() || !self.compose(&inv, a)?.is_zero() {
                return fail("inverse(a) is a two-sided inverse", witness("inverse fails", &self.carrier, &[a]));
            }
        }
        let assoc = |a: &Element, b: &Element, c: &Element| -> Result<bool> {
            Ok(self.compose(&self.compose(a, b)?, c)? == self.compose(a, &self.compose(b, c)?)?)
        };
        if elements.len() as u128 <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in &elements {
                for b in &elements {
                    for c in &elements {
                        if !assoc(a, b, c)? {
                            return fail("∘ is associative", witness("violation", &self.carrier, &[a, b, c]));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let pick = |rng: &mut StdRng| &elements[rng.gen_range(0..elements.len())];
                let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                if !assoc(a, b, c)? {
                    return fail("∘ is associative", witness("violation", &self.carrier, &[a, b, c]));
                }
            }
        }
        Ok(())
    }
}

/// The unit `1 - t` for `t ∈ T`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit(pub Element);

impl Unit {
    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }
}

/// `{1 - t : t ∈ T}` under `(1 - s)(1 - t) = 1 - (s + t - s·t)`.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    k0: AbelianGroup,
    ring: Table,
    /// The `t`, in lexicographic order.
    elements: Vec<Element>,
}

impl UnitGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn units(&self) -> Vec<Unit> {
        self.elements.iter().cloned().map(Unit).collect()
    }

    pub fn mul(&self, u: &Unit, v: &Unit) -> Result<Unit> {
        let st = self.ring.eval(&u.0 .0, &v.0 .0, &self.k0)?;
        Ok(Unit(self.k0.sub(&self.k0.add(&u.0, &v.0)?, &st)?))
    }

    /// `(1 - s)^{-1} = 1 + s + s^2 + ...`, that is `1 - t` with
    /// `t = -(s + s^2 + ...)`.
    pub fn inverse(&self, u: &Unit) -> Result<Unit> {
        let mut acc = self.k0.zero();
        let mut power = u.0.clone();
        let mut k = 0;
        while !power.is_zero() {
            if k > self.elements.len() {
                return Err(Error::Construction {
                    identity: "geometric series in T terminates".into(),
                    witness: self.k0.show(&u.0),
                });
            }
            acc = self.k0.add(&acc, &power)?;
            power = self.ring.eval(&power.0, &u.0 .0, &self.k0)?;
            k += 1;
        }
        Ok(Unit(self.k0.neg(&acc)?))
    }

    pub fn show(&self, u: &Unit) -> String {
        if u.is_one() {
            "1".into()
        } else {
            format!("1 - ({})", self.k0.show(&u.0))
        }
    }

    /// Full multiplication table over [`units`](Self::units).
    pub fn table(&self) -> Result<SubgroupTable> {
        let index: HashMap<&Element, usize> = self.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = Vec::new();
        for s in &self.elements {
            let row = self
                .elements
                .iter()
                .map(|t| {
                    let p = self.mul(&Unit(s.clone()), &Unit(t.clone()))?;
                    index.get(&p.0).copied().ok_or_else(|| Error::input("T is not closed under the product"))
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let identity = index[&self.k0.zero()];
        Ok(SubgroupTable::new(self.elements.clone(), table, identity, self.k0.labels().to_vec(), None))
    }
}
