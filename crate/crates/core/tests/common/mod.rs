//! Brute-force oracles shared by the property and acceptance suites. None of
//! them go through the normal-form code they are compared against.

#![allow(dead_code)]

use std::collections::HashSet;

use moorek::fields::FiniteNilRing;
use moorek::Int;
use rand::Rng;

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for p in 0..k {
        if m[p][p] == 0 {
            match (p + 1..k).find(|&r| m[r][p] != 0) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
            }
        }
        prev = m[p][p];
    }
    sign * m[k - 1][k - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `D_k` is the gcd of all
/// `k x k` minors and `d_k = D_k / D_{k-1}`. Zeros pad to `min(rows, cols)`.
pub fn invariant_factors(a: &[Vec<Int>]) -> Vec<Int> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c] as i128).collect()).collect();
                g = gcd(g, det(minor));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat_n(0, rows.min(cols) - out.len()));
            break;
        }
        out.push((g / prev) as Int);
        prev = g;
    }
    out
}

/// All coefficient vectors of `⊕ Z_{d_i}`, lexicographically.
pub fn enumerate(factors: &[Int]) -> Vec<Vec<Int>> {
    let mut out = vec![vec![]];
    for &d in factors {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..d).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn order(factors: &[Int]) -> u128 {
    factors.iter().map(|&d| d as u128).product()
}

/// Kernel and image sizes of `x ↦ m x` from `⊕ Z_{d_j}` to `⊕ Z_{e_i}`.
pub fn hom_sizes(dom: &[Int], cod: &[Int], m: &[Vec<Int>]) -> (usize, usize) {
    let mut kernel = 0;
    let mut image = HashSet::new();
    for x in enumerate(dom) {
        let y: Vec<Int> = cod
            .iter()
            .enumerate()
            .map(|(i, &e)| (0..dom.len()).map(|j| m[i][j] * x[j]).sum::<Int>().rem_euclid(e))
            .collect();
        if y.iter().all(|&c| c == 0) {
            kernel += 1;
        }
        image.insert(y);
    }
    (kernel, image.len())
}

/// `#{h ∈ ⊕ Z_{e_i} : d h = 0}`
pub fn killed_by(d: Int, factors: &[Int]) -> u128 {
    enumerate(factors).iter().filter(|h| h.iter().zip(factors).all(|(&c, &e)| (d * c) % e == 0)).count() as u128
}

/// `|G ⊗ H| = |Hom(G, H)| = ∏_i #{h : d_i h = 0}` for finite `G`, `H`,
/// counted by enumeration; `Tor(G, H)` has the same order.
pub fn tensor_order(g: &[Int], h: &[Int]) -> u128 {
    g.iter().map(|&d| killed_by(d, h)).product()
}

/// `|G / nG|` by enumerating `nG`.
pub fn mod_n_order(g: &[Int], n: Int) -> u128 {
    let multiples: HashSet<Vec<Int>> =
        enumerate(g).iter().map(|x| x.iter().zip(g).map(|(&c, &d)| (n * c) % d).collect()).collect();
    order(g) / multiples.len() as u128
}

/// Random truncated monomial ring with additive orders `n^e(μ)` where `e`
/// never increases from a monomial to its multiples. Unlike the filtered
/// models this allows graded pieces with torsion.
pub fn random_nil_ring<G: Rng>(rng: &mut G, n: Int, max_order: u128) -> FiniteNilRing {
    loop {
        let vars = rng.gen_range(1..=2usize);
        let mut monos: Vec<Vec<u32>> = Vec::new();
        let mut exps: Vec<u32> = Vec::new();
        let mut frontier: Vec<Vec<u32>> = (0..vars).map(|v| (0..vars).map(|w| u32::from(v == w)).collect()).collect();
        while let Some(m) = frontier.pop() {
            if monos.contains(&m) {
                continue;
            }
            let parents: Vec<usize> = (0..vars)
                .filter(|&v| m[v] > 0)
                .filter_map(|v| {
                    let mut p = m.clone();
                    p[v] -= 1;
                    monos.iter().position(|q| *q == p)
                })
                .collect();
            let degree: u32 = m.iter().sum();
            if degree > 1 && parents.len() < (0..vars).filter(|&v| m[v] > 0).count() {
                continue;
            }
            let cap = parents.iter().map(|&p| exps[p]).min().unwrap_or(3);
            if cap == 0 || (degree > 1 && !rng.gen_bool(0.6)) {
                continue;
            }
            monos.push(m.clone());
            exps.push(rng.gen_range(1..=cap));
            for v in 0..vars {
                let mut c = m.clone();
                c[v] += 1;
                frontier.insert(0, c);
            }
        }
        let orders: Vec<Int> = exps.iter().map(|&e| n.pow(e)).collect();
        if order(&orders) > max_order {
            continue;
        }
        let labels: Vec<String> = (0..monos.len()).map(|i| format!("m{i}")).collect();
        let mut products = Vec::new();
        for (i, a) in monos.iter().enumerate() {
            for (j, b) in monos.iter().enumerate() {
                let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(t) = monos.iter().position(|m| *m == prod) {
                    let mut c = vec![0; monos.len()];
                    c[t] = 1;
                    products.push((i, j, c));
                }
            }
        }
        return FiniteNilRing::from_structure(&orders, &labels, &products).expect("valid nil ring");
    }
}

/// One-step relation `b = a + n z + a z` as a boolean matrix over the
/// lexicographic element list.
pub fn one_step_relation(r: &FiniteNilRing, n: Int) -> (Vec<moorek::Element>, Vec<Vec<bool>>) {
    let elems = r.elements().unwrap();
    let idx = |e: &moorek::Element| elems.binary_search(e).unwrap();
    let mut rel = vec![vec![false; elems.len()]; elems.len()];
    for (ia, a) in elems.iter().enumerate() {
        for z in &elems {
            let nz = r.scale(n, z).unwrap();
            let az = r.mul(a, z).unwrap();
            let b = r.add(&r.add(a, &nz).unwrap(), &az).unwrap();
            rel[ia][idx(&b)] = true;
        }
    }
    (elems, rel)
}
