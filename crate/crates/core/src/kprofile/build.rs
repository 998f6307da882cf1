//! Profile constructors.
//!
//! Every profile is assembled the same way: the integral groups and ring are
//! produced in raw coordinates and normalized, then each mod-n group is built
//! as `K̃^d ⊗ Z_n ⊕ K̃^{d+1}[n]` with pieces `ρ(x)` and `λ(s)`. The reduction
//! `ρ` is the inclusion of the first summand, the Bockstein sends `λ(s)` to
//! `s` and kills `ρ(x)`, and the action is `x·ρ(y) = ρ(x·y)`,
//! `x·λ(s) = λ(x·s)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::expr::SpaceExpr;
use super::table::Table;
use super::validate::validate;
use super::{CarrierStatus, KProfile};
use crate::abelian::{normalize, AbelianGroup, Element, GroupHom, Presentation};
use crate::error::{Error, Result};
use crate::num::{gcd, IntScalar};
use crate::{Int, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stipulation {
    /// The extension is split by the evident section (tensor part plus Tor
    /// part, or `ρ`-part plus `λ`-part).
    Direct,
}

/// Splitting stipulations for extensions that the exact sequences leave
/// open. `k0`/`k1` refer to the integral Künneth sequence, `k0n`/`k1n` to
/// the mod-n groups.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Splitting {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<Stipulation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1: Option<Stipulation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0n: Option<Stipulation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1n: Option<Stipulation>,
}

impl Splitting {
    pub fn direct() -> Self {
        let d = Some(Stipulation::Direct);
        Splitting { k0: d, k1: d, k0n: d, k1n: d }
    }

    fn integral(&self, d: usize) -> Option<Stipulation> {
        if d == 0 {
            self.k0
        } else {
            self.k1
        }
    }

    fn modn(&self, d: usize) -> Option<Stipulation> {
        if d == 0 {
            self.k0n
        } else {
            self.k1n
        }
    }
}

/// Integral groups and ring in unnormalized coordinates.
struct RawRing {
    orders: [Vec<Int>; 2],
    labels: [Vec<String>; 2],
    /// `products[p][q][a * len(q) + b]`: coordinates in degree `p + q`.
    products: [[Vec<Vec<Int>>; 2]; 2],
}

impl RawRing {
    fn new(orders: [Vec<Int>; 2], labels: [Vec<String>; 2]) -> Self {
        let len = [orders[0].len(), orders[1].len()];
        let products =
            std::array::from_fn(|p| std::array::from_fn(|q| vec![vec![0; len[(p + q) % 2]]; len[p] * len[q]]));
        RawRing { orders, labels, products }
    }

    fn entry(&mut self, p: usize, a: usize, q: usize, b: usize) -> &mut Vec<Int> {
        let right = self.orders[q].len();
        &mut self.products[p][q][a * right + b]
    }

    fn normalize(&self) -> Result<([AbelianGroup; 2], [[Table; 2]; 2])> {
        let pres = [normalize(&self.orders[0], &self.labels[0])?, normalize(&self.orders[1], &self.labels[1])?];
        let groups = [pres[0].group.clone(), pres[1].group.clone()];
        let mut tables: Vec<Table> = Vec::with_capacity(4);
        for p in 0..2 {
            for q in 0..2 {
                let r = (p + q) % 2;
                let right = self.orders[q].len();
                let t = Table::from_fn(groups[p].ngens(), groups[q].ngens(), &groups[r], |a, b| {
                    let x = pres[p].to_old().col(a);
                    let y = pres[q].to_old().col(b);
                    let mut acc = vec![0; self.orders[r].len()];
                    for (i, &xi) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
                        for (j, &yj) in y.iter().enumerate().filter(|(_, &v)| v != 0) {
                            let c = xi.cmul(yj)?;
                            for (k, &v) in self.products[p][q][i * right + j].iter().enumerate() {
                                acc[k] = acc[k].cadd(c.cmul(v)?)?;
                            }
                        }
                    }
                    pres[r].express(&acc)
                })?;
                tables.push(t);
            }
        }
        let mut it = tables.into_iter();
        let mut next = || it.next().expect("four tables");
        let ring = [[next(), next()], [next(), next()]];
        Ok((groups, ring))
    }
}

/// The mod-n group in one degree, built from `own ⊗ Z_n ⊕ next[n]`.
struct Layer {
    pres: Presentation,
    n_rho: usize,
    /// For each `λ` piece: the factor of `next` it comes from and the
    /// multiplier `h / gcd(h, n)` relating it to that generator.
    lam: Vec<(usize, Int)>,
    next: AbelianGroup,
}

fn wrap(label: &str) -> String {
    if label.chars().any(|c| matches!(c, '⊗' | '+' | '-' | ' ')) {
        format!("({label})")
    } else {
        label.to_string()
    }
}

impl Layer {
    fn new(own: &AbelianGroup, next: &AbelianGroup, n: Int) -> Result<Layer> {
        let mut orders = Vec::new();
        let mut labels = Vec::new();
        for (&f, l) in own.factors().iter().zip(own.labels()) {
            orders.push(gcd(f, n));
            labels.push(format!("ρ({l})"));
        }
        let mut lam = Vec::new();
        for (j, (&h, l)) in next.factors().iter().zip(next.labels()).enumerate() {
            if h == 0 {
                continue;
            }
            let g = gcd(h, n);
            orders.push(g);
            labels.push(format!("λ({l})"));
            lam.push((j, h / g));
        }
        Ok(Layer { pres: normalize(&orders, &labels)?, n_rho: own.ngens(), lam, next: next.clone() })
    }

    fn group(&self) -> &AbelianGroup {
        &self.pres.group
    }

    fn rho_of(&self, y: &[Int]) -> Result<Element> {
        let mut raw = y.to_vec();
        raw.resize(self.n_rho + self.lam.len(), 0);
        self.pres.express(&raw)
    }

    /// `λ(s)` for an n-torsion element `s` of the next group.
    fn lambda_of(&self, s: &Element) -> Result<Element> {
        let mut raw = vec![0; self.n_rho];
        for (j, (&h, &c)) in self.next.factors().iter().zip(&s.0).enumerate() {
            if h == 0 && c != 0 {
                return Err(Error::input(format!("λ applied to a non-torsion class (coordinate {j})")));
            }
        }
        for &(j, scale) in &self.lam {
            if s.0[j] % scale != 0 {
                return Err(Error::input(format!("λ applied to {:?}, which is not n-torsion in {}", s.0, self.next)));
            }
            raw.push(s.0[j] / scale);
        }
        self.pres.express(&raw)
    }

    /// Splits `b = ρ(y) + λ(s)`.
    fn split(&self, b: &Element) -> Result<(Vec<Int>, Element)> {
        let raw = self.pres.lift(b)?;
        let y = raw[..self.n_rho].to_vec();
        let mut s = vec![0; self.next.ngens()];
        for (k, &(j, scale)) in self.lam.iter().enumerate() {
            s[j] = s[j].cadd(raw[self.n_rho + k].cmul(scale)?)?;
        }
        Ok((y, self.next.reduce(&s)?))
    }
}

fn unit_vector(len: usize, i: usize) -> Vec<Int> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

/// Builds the mod-n layer and action for normalized integral data, then
/// validates.
#[allow(clippy::too_many_arguments)]
fn assemble(
    name: String,
    n: Int,
    red: [AbelianGroup; 2],
    ring: [[Table; 2]; 2],
    connected: bool,
    modn_status: [CarrierStatus; 2],
    flags: Vec<String>,
) -> Result<KProfile> {
    let layers = [Layer::new(&red[0], &red[1], n)?, Layer::new(&red[1], &red[0], n)?];
    let mut rho = Vec::new();
    let mut beta = Vec::new();
    for d in 0..2 {
        let layer = &layers[d];
        let cols = (0..red[d].ngens())
            .map(|i| layer.rho_of(&unit_vector(red[d].ngens(), i)).map(|e| e.0))
            .collect::<Result<Vec<_>>>()?;
        let m = IntMatrix::from_cols(&cols, layer.group().ngens())?;
        rho.push(GroupHom::new(red[d].clone(), layer.group().clone(), m)?);
        let cols = layer.group().gens().iter().map(|b| layer.split(b).map(|(_, s)| s.0)).collect::<Result<Vec<_>>>()?;
        let m = IntMatrix::from_cols(&cols, red[(d + 1) % 2].ngens())?;
        beta.push(GroupHom::new(layer.group().clone(), red[(d + 1) % 2].clone(), m)?);
    }
    let mut act = Vec::new();
    for p in 0..2 {
        for q in 0..2 {
            let r = (p + q) % 2;
            let target = layers[r].group();
            let t = Table::from_fn(red[p].ngens(), layers[q].group().ngens(), target, |a, c| {
                let x = unit_vector(red[p].ngens(), a);
                let (y, s) = layers[q].split(&layers[q].group().gen(c))?;
                let xy = ring[p][q].eval(&x, &y, &red[r])?;
                let xs = ring[p][(q + 1) % 2].eval(&x, &s.0, &red[(r + 1) % 2])?;
                target.add(&layers[r].rho_of(&xy.0)?, &layers[r].lambda_of(&xs)?)
            })?;
            act.push(t);
        }
    }
    let mut act = act.into_iter();
    let mut next = || act.next().expect("four tables");
    let act = [[next(), next()], [next(), next()]];
    let mut beta = beta.into_iter();
    let mut rho = rho.into_iter();
    let [s0, s1] = modn_status;
    let profile = KProfile {
        name,
        modulus: n,
        red,
        modn: [layers[0].group().clone(), layers[1].group().clone()],
        rho: [rho.next().expect("rho0"), rho.next().expect("rho1")],
        beta: [beta.next().expect("beta0"), beta.next().expect("beta1")],
        ring,
        act,
        connected,
        modn_status: [s0, s1],
        flags,
    };
    let report = validate(&profile)?;
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::Construction {
            identity: format!("{} on {}", bad.name, profile.name),
            witness: bad.detail.clone(),
        });
    }
    Ok(profile)
}

fn from_raw(
    name: String,
    n: Int,
    raw: &RawRing,
    connected: bool,
    modn_status: [CarrierStatus; 2],
    flags: Vec<String>,
) -> Result<KProfile> {
    let (red, ring) = raw.normalize()?;
    assemble(name, n, red, ring, connected, modn_status, flags)
}

fn check_modulus(n: Int) -> Result<()> {
    if n < 2 {
        return Err(Error::input(format!("modulus must be at least 2, got {n}")));
    }
    Ok(())
}

const STANDARD: &str = "standard-topology";

fn determined() -> [CarrierStatus; 2] {
    [CarrierStatus::Determined, CarrierStatus::Determined]
}

fn point(n: Int) -> Result<KProfile> {
    let raw = RawRing::new([vec![], vec![]], [vec![], vec![]]);
    from_raw("point".into(), n, &raw, true, determined(), vec![])
}

fn sphere(k: u32, n: Int) -> Result<KProfile> {
    let d = (k % 2) as usize;
    let label = if d == 0 { "t" } else { "u" };
    let mut orders = [vec![], vec![]];
    let mut labels = [vec![], vec![]];
    orders[d].push(0);
    labels[d].push(label.to_string());
    let mut raw = RawRing::new(orders, labels);
    if k == 0 {
        // S^0 is the unit for the smash product: t is idempotent.
        *raw.entry(0, 0, 0, 0) = vec![1];
    }
    from_raw(format!("S({k})"), n, &raw, k > 0, determined(), vec![STANDARD.into()])
}

fn projective_space(k: u32, n: Int) -> Result<KProfile> {
    let k = k as usize;
    let labels: Vec<String> = (1..=k).map(|i| if i == 1 { "x".into() } else { format!("x^{i}") }).collect();
    let mut raw = RawRing::new([vec![0; k], vec![]], [labels, vec![]]);
    for a in 0..k {
        for b in 0..k {
            if a + b + 2 <= k {
                *raw.entry(0, a, 0, b) = unit_vector(k, a + b + 1);
            }
        }
    }
    from_raw(format!("CP({k})"), n, &raw, true, determined(), vec![STANDARD.into()])
}

fn moore(m: Int, n: Int) -> Result<KProfile> {
    if m < 2 {
        return Err(Error::input(format!("Moore parameter must be at least 2, got {m}")));
    }
    if n % m != 0 {
        return Err(Error::unsupported(format!(
            "catalog has no data for M({m}) with coefficients Z_{n}: the parameter must divide the modulus"
        )));
    }
    let raw = RawRing::new([vec![m], vec![]], [vec!["g".into()], vec![]]);
    from_raw(format!("M({m})"), n, &raw, true, determined(), vec![])?.relabel("λ(g)", "a_λ")
}

/// Profile of the space described by `expr` with coefficients `Z_n`.
/// `splitting` is consulted wherever a smash or product meets an extension
/// that the exact sequences leave open.
pub fn catalog(expr: &SpaceExpr, n: Int, splitting: Option<&Splitting>) -> Result<KProfile> {
    check_modulus(n)?;
    match expr {
        SpaceExpr::Point => point(n),
        SpaceExpr::Sphere(k) => sphere(*k, n),
        SpaceExpr::Moore(m) => moore(*m, n),
        SpaceExpr::ProjectiveSpace(k) => projective_space(*k, n),
        SpaceExpr::MnXSigmaMn(m) => {
            if *m != n {
                return Err(Error::input(format!("MxSM({m}) requires its parameter to equal the modulus {n}")));
            }
            mn_x_sigma_mn(n)
        }
        SpaceExpr::Susp(e) => suspend(&catalog(e, n, splitting)?),
        SpaceExpr::Smash(a, b) => smash(&catalog(a, n, splitting)?, &catalog(b, n, splitting)?, splitting),
        SpaceExpr::Prod(a, b) => product(&catalog(a, n, splitting)?, &catalog(b, n, splitting)?, splitting),
    }
}

pub fn suspend(p: &KProfile) -> Result<KProfile> {
    let sigma = |g: &AbelianGroup| -> Vec<String> { g.labels().iter().map(|l| format!("Σ{}", wrap(l))).collect() };
    let raw =
        RawRing::new([p.red[1].factors().to_vec(), p.red[0].factors().to_vec()], [sigma(&p.red[1]), sigma(&p.red[0])]);
    let [s0, s1] = p.modn_status.clone();
    from_raw(format!("susp({})", p.name), p.modulus, &raw, true, [s1, s0], p.flags.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Piece {
    /// `a ⊗ 1` for generator `a` of `K̃^i(X)`.
    Left(usize, usize),
    /// `1 ⊗ b`
    Right(usize, usize),
    Tensor(usize, usize, usize, usize),
    Tor(usize, usize, usize, usize),
}

/// `(degree, generator)` of one factor, or `None` for the unit.
type Slot = Option<(usize, usize)>;

impl Piece {
    fn parts(self) -> (Slot, Slot) {
        match self {
            Piece::Left(i, a) => (Some((i, a)), None),
            Piece::Right(j, b) => (None, Some((j, b))),
            Piece::Tensor(i, a, j, b) | Piece::Tor(i, a, j, b) => (Some((i, a)), Some((j, b))),
        }
    }
}

/// Value of a product in one factor: the unit, or coordinates in `K̃^d`.
enum Val {
    Unit,
    Coords(usize, Vec<Int>),
}

fn factor_product(p: &KProfile, a: Slot, b: Slot) -> Val {
    match (a, b) {
        (None, None) => Val::Unit,
        (Some((i, x)), None) | (None, Some((i, x))) => Val::Coords(i, unit_vector(p.red[i].ngens(), x)),
        (Some((i, x)), Some((k, y))) => Val::Coords((i + k) % 2, p.ring[i][k].get(x, y).0.clone()),
    }
}

/// Generators of `K̃^*(X ∧ Y)` or `K̃^*(X × Y)` as formal pieces.
struct Assembly<'a> {
    x: &'a KProfile,
    y: &'a KProfile,
    pieces: [Vec<Piece>; 2],
    orders: [Vec<Int>; 2],
    labels: [Vec<String>; 2],
    index: HashMap<Piece, usize>,
}

impl<'a> Assembly<'a> {
    fn new(x: &'a KProfile, y: &'a KProfile) -> Self {
        Assembly {
            x,
            y,
            pieces: Default::default(),
            orders: Default::default(),
            labels: Default::default(),
            index: HashMap::new(),
        }
    }

    fn push(&mut self, d: usize, piece: Piece, order: Int, label: String) {
        self.index.insert(piece, self.pieces[d].len());
        self.pieces[d].push(piece);
        self.orders[d].push(order);
        self.labels[d].push(label);
    }

    fn add_factor_pieces(&mut self) {
        for i in 0..2 {
            for a in 0..self.x.red[i].ngens() {
                let label = format!("{}⊗1", wrap(&self.x.red[i].labels()[a]));
                self.push(i, Piece::Left(i, a), self.x.red[i].factors()[a], label);
            }
            for b in 0..self.y.red[i].ngens() {
                let label = format!("1⊗{}", wrap(&self.y.red[i].labels()[b]));
                self.push(i, Piece::Right(i, b), self.y.red[i].factors()[b], label);
            }
        }
    }

    fn add_smash_pieces(&mut self) {
        for i in 0..2 {
            for j in 0..2 {
                for a in 0..self.x.red[i].ngens() {
                    for b in 0..self.y.red[j].ngens() {
                        let (f, h) = (self.x.red[i].factors()[a], self.y.red[j].factors()[b]);
                        let (la, lb) = (wrap(&self.x.red[i].labels()[a]), wrap(&self.y.red[j].labels()[b]));
                        self.push((i + j) % 2, Piece::Tensor(i, a, j, b), gcd(f, h), format!("{la}⊗{lb}"));
                        if f > 0 && h > 0 {
                            let label = format!("Tor({},{})", self.x.red[i].labels()[a], self.y.red[j].labels()[b]);
                            self.push((i + j + 1) % 2, Piece::Tor(i, a, j, b), gcd(f, h), label);
                        }
                    }
                }
            }
        }
    }

    /// Orders of the tensor and Tor pieces in degree `d`.
    fn kunneth_ends(&self, d: usize) -> Result<(AbelianGroup, AbelianGroup)> {
        let mut parts: [(Vec<Int>, Vec<String>); 2] = Default::default();
        for (k, piece) in self.pieces[d].iter().enumerate() {
            let slot = match piece {
                Piece::Tensor(..) => 0,
                Piece::Tor(..) => 1,
                _ => continue,
            };
            parts[slot].0.push(self.orders[d][k]);
            parts[slot].1.push(self.labels[d][k].clone());
        }
        Ok((normalize(&parts[0].0, &parts[0].1)?.group, normalize(&parts[1].0, &parts[1].1)?.group))
    }

    fn raw_ring(&self) -> Result<RawRing> {
        let mut raw = RawRing::new(self.orders.clone(), self.labels.clone());
        for p in 0..2 {
            for q in 0..2 {
                for (a, &pa) in self.pieces[p].iter().enumerate() {
                    for (b, &pb) in self.pieces[q].iter().enumerate() {
                        let v = self.piece_product(pa, pb, (p + q) % 2)?;
                        *raw.entry(p, a, q, b) = v;
                    }
                }
            }
        }
        Ok(raw)
    }

    /// `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} (aa')⊗(bb')`, with Tor classes
    /// multiplying to zero.
    fn piece_product(&self, pa: Piece, pb: Piece, r: usize) -> Result<Vec<Int>> {
        let mut out = vec![0; self.pieces[r].len()];
        if matches!(pa, Piece::Tor(..)) || matches!(pb, Piece::Tor(..)) {
            return Ok(out);
        }
        let ((xa, ya), (xb, yb)) = (pa.parts(), pb.parts());
        let sign: Int = if ya.map_or(0, |(j, _)| j) * xb.map_or(0, |(i, _)| i) == 1 { -1 } else { 1 };
        let xv = factor_product(self.x, xa, xb);
        let yv = factor_product(self.y, ya, yb);
        let mut put = |piece: Piece, c: Int| -> Result<()> {
            let k = *self
                .index
                .get(&piece)
                .ok_or_else(|| Error::input(format!("product lands outside the assembled pieces: {piece:?}")))?;
            out[k] = out[k].cadd(sign.cmul(c)?)?;
            Ok(())
        };
        match (xv, yv) {
            (Val::Unit, Val::Unit) => return Err(Error::input("product of two units in a reduced ring")),
            (Val::Unit, Val::Coords(j, c)) => {
                for (b, &v) in c.iter().enumerate().filter(|(_, &v)| v != 0) {
                    put(Piece::Right(j, b), v)?;
                }
            }
            (Val::Coords(i, c), Val::Unit) => {
                for (a, &v) in c.iter().enumerate().filter(|(_, &v)| v != 0) {
                    put(Piece::Left(i, a), v)?;
                }
            }
            (Val::Coords(i, c), Val::Coords(j, e)) => {
                for (a, &u) in c.iter().enumerate().filter(|(_, &v)| v != 0) {
                    for (b, &v) in e.iter().enumerate().filter(|(_, &v)| v != 0) {
                        put(Piece::Tensor(i, a, j, b), u.cmul(v)?)?;
                    }
                }
            }
        }
        Ok(out)
    }
}

fn layer_name(d: usize, modn: bool) -> &'static str {
    match (d, modn) {
        (0, false) => "K̃^0",
        (1, false) => "K̃^1",
        (0, true) => "K̃^0(;Z_n)",
        _ => "K^1(;Z_n)",
    }
}

/// Stipulations for every layer left open, then one covering all layers.
fn options(keys: &[&str]) -> Vec<String> {
    let all = r#"{"k0": "direct", "k1": "direct", "k0n": "direct", "k1n": "direct"}"#.to_string();
    let needed: Vec<String> = keys.iter().map(|k| format!("\"{k}\": \"direct\"")).collect();
    let needed = format!("{{{}}}", needed.join(", "));
    if needed == all {
        vec![all]
    } else {
        vec![needed, all]
    }
}

/// Checks the Künneth extensions of `X ∧ Y` and of its mod-n groups against
/// the supplied stipulations. Returns the status of each mod-n degree and
/// report flags. An ambiguity names the first open layer and lists every
/// key still missing.
fn resolve_smash(
    smash: &Assembly<'_>,
    name: &str,
    n: Int,
    splitting: Option<&Splitting>,
) -> Result<([CarrierStatus; 2], Vec<String>)> {
    let mut flags = Vec::new();
    let mut groups = Vec::new();
    let mut missing: Vec<&str> = Vec::new();
    let mut first: Option<(String, String, String)> = None;
    for d in 0..2 {
        let (tensor, tor) = smash.kunneth_ends(d)?;
        if !tensor.is_trivial() && !tor.is_trivial() {
            if splitting.and_then(|s| s.integral(d)).is_none() {
                missing.push(["k0", "k1"][d]);
                first.get_or_insert_with(|| {
                    (format!("{} of {name}", layer_name(d, false)), tensor.pretty(), tor.pretty())
                });
            }
            flags.push(format!("stipulated: {} of {name} split as tensor ⊕ Tor", layer_name(d, false)));
        }
        let mut orders = tensor.factors().to_vec();
        orders.extend_from_slice(tor.factors());
        groups.push(normalize(&orders, &vec![String::new(); orders.len()])?.group);
    }
    let mut status = determined();
    for d in 0..2 {
        let sub = crate::abelian::tensor_zn(&groups[d], n)?;
        let quotient = crate::abelian::tor_zn(&groups[(d + 1) % 2], n)?;
        if sub.is_trivial() || quotient.is_trivial() {
            continue;
        }
        if splitting.and_then(|s| s.modn(d)).is_none() {
            missing.push(["k0n", "k1n"][d]);
            first.get_or_insert_with(|| {
                (format!("{} of {name}", layer_name(d, true)), sub.to_string(), quotient.to_string())
            });
        }
        let why = format!("{} of {name} split as ρ-part ⊕ λ-part", layer_name(d, true));
        flags.push(format!("stipulated: {why}"));
        status[d] = CarrierStatus::Stipulated(why);
    }
    if let Some((layer, sub, quotient)) = first {
        return Err(Error::Ambiguity { layer, sub, quotient, options: options(&missing) });
    }
    Ok((status, flags))
}

fn is_smash_unit(p: &KProfile) -> bool {
    p.red[1].is_trivial() && p.red[0].factors() == [0] && p.ring[0][0].get(0, 0).0 == [1]
}

fn merge_flags(parts: &[&[String]]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for f in parts.iter().flat_map(|p| p.iter()) {
        if !out.contains(f) {
            out.push(f.clone());
        }
    }
    out
}

fn worst(a: &CarrierStatus, b: &CarrierStatus) -> CarrierStatus {
    let rank = |s: &CarrierStatus| match s {
        CarrierStatus::Determined => 0,
        CarrierStatus::Stipulated(_) => 1,
        CarrierStatus::Unresolved(_) => 2,
    };
    if rank(b) > rank(a) {
        b.clone()
    } else {
        a.clone()
    }
}

fn same_modulus(p: &KProfile, q: &KProfile) -> Result<()> {
    if p.modulus != q.modulus {
        return Err(Error::input(format!(
            "profiles {} and {} have different moduli {} and {}",
            p.name, q.name, p.modulus, q.modulus
        )));
    }
    Ok(())
}

pub fn smash(p: &KProfile, q: &KProfile, splitting: Option<&Splitting>) -> Result<KProfile> {
    same_modulus(p, q)?;
    let name = format!("smash({},{})", p.name, q.name);
    if is_smash_unit(q) {
        return Ok(p.clone().with_name(name));
    }
    if is_smash_unit(p) {
        return Ok(q.clone().with_name(name));
    }
    let mut asm = Assembly::new(p, q);
    asm.add_smash_pieces();
    let (status, flags) = resolve_smash(&asm, &name, p.modulus, splitting)?;
    let raw = asm.raw_ring()?;
    let status = [
        worst(&worst(&status[0], &p.modn_status[0]), &q.modn_status[0]),
        worst(&worst(&status[1], &p.modn_status[1]), &q.modn_status[1]),
    ];
    let flags = merge_flags(&[&p.flags, &q.flags, &flags]);
    from_raw(name, p.modulus, &raw, p.connected || q.connected, status, flags)
}

/// `K̃^*(X × Y) = K̃^*(X) ⊕ K̃^*(Y) ⊕ K̃^*(X ∧ Y)`, with the factor summands
/// embedded by `x ↦ x⊗1` and `y ↦ 1⊗y`.
pub fn product(p: &KProfile, q: &KProfile, splitting: Option<&Splitting>) -> Result<KProfile> {
    same_modulus(p, q)?;
    let name = format!("prod({},{})", p.name, q.name);
    let mut smash_part = Assembly::new(p, q);
    smash_part.add_smash_pieces();
    let (status, flags) = resolve_smash(&smash_part, &name, p.modulus, splitting)?;
    let mut asm = Assembly::new(p, q);
    asm.add_factor_pieces();
    asm.add_smash_pieces();
    let raw = asm.raw_ring()?;
    let status = [
        worst(&worst(&status[0], &p.modn_status[0]), &q.modn_status[0]),
        worst(&worst(&status[1], &p.modn_status[1]), &q.modn_status[1]),
    ];
    let flags = merge_flags(&[&p.flags, &q.flags, &flags]);
    from_raw(name, p.modulus, &raw, p.connected && q.connected, status, flags)
}

/// `M_n × ΣM_n` with its built-in splitting. Integral generators:
/// `g⊗1`, `Tor(g,u)` in degree 0 and `1⊗u`, `g⊗u` in degree 1. The mod-n
/// class `λ(g⊗1)` is the lift `x` with `β(x) = g⊗1`.
pub fn mn_x_sigma_mn(n: Int) -> Result<KProfile> {
    check_modulus(n)?;
    let m = moore(n, n)?;
    let sm = suspend(&m)?.relabel("Σg", "u")?;
    let split = Splitting { k0n: Some(Stipulation::Direct), k1n: Some(Stipulation::Direct), ..Default::default() };
    let mut p = product(&m, &sm, Some(&split))?.with_name(format!("MxSM({n})"));
    let status = if n % 2 == 1 {
        CarrierStatus::Stipulated(format!(
            "K^1(;Z_{n}) of MxSM({n}) taken as Z_{n}^4 with the ρ-part ⊕ λ-part splitting"
        ))
    } else {
        CarrierStatus::Unresolved(format!(
            "the additive extension of K^1(;Z_{n}) of MxSM({n}) is open for even n; \
             only the subgroup generated by ρ(K̃^1) and λ(g⊗1) is assumption-free"
        ))
    };
    p.modn_status = [status.clone(), status];
    p.flags.retain(|f| !f.starts_with("stipulated"));
    Ok(p)
}
