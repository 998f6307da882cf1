//! JSON form of a profile: groups as `{"factors", "labels"}`, maps as
//! row-major integer arrays, tables as sparse `[i, j, coeffs]` triples keyed
//! by the two degrees (`"01"` is degree 0 times degree 1).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::table::Table;
use super::{CarrierStatus, KProfile};
use crate::abelian::{AbelianGroup, GroupHom};
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};

type Sparse = Vec<(usize, usize, Vec<Int>)>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileRepr {
    name: String,
    modulus: Int,
    k0red: AbelianGroup,
    k1red: AbelianGroup,
    k0n: AbelianGroup,
    k1n: AbelianGroup,
    rho0: Vec<Vec<Int>>,
    rho1: Vec<Vec<Int>>,
    beta0: Vec<Vec<Int>>,
    beta1: Vec<Vec<Int>>,
    ring: BTreeMap<String, Sparse>,
    act: BTreeMap<String, Sparse>,
    connected: bool,
    status: [CarrierStatus; 2],
    flags: Vec<String>,
}

fn key(p: usize, q: usize) -> String {
    format!("{p}{q}")
}

fn hom(domain: &AbelianGroup, codomain: &AbelianGroup, rows: &[Vec<Int>], what: &str) -> Result<GroupHom> {
    if rows.len() != codomain.ngens() {
        return Err(Error::input(format!("{what}: {} rows for a codomain of rank {}", rows.len(), codomain.ngens())));
    }
    GroupHom::new(domain.clone(), codomain.clone(), IntMatrix::from_rows(rows, domain.ngens())?)
}

impl From<&KProfile> for ProfileRepr {
    fn from(p: &KProfile) -> Self {
        let mut ring = BTreeMap::new();
        let mut act = BTreeMap::new();
        for a in 0..2 {
            for b in 0..2 {
                ring.insert(key(a, b), p.ring[a][b].sparse());
                act.insert(key(a, b), p.act[a][b].sparse());
            }
        }
        ProfileRepr {
            name: p.name.clone(),
            modulus: p.modulus,
            k0red: p.red[0].clone(),
            k1red: p.red[1].clone(),
            k0n: p.modn[0].clone(),
            k1n: p.modn[1].clone(),
            rho0: p.rho[0].matrix().to_rows(),
            rho1: p.rho[1].matrix().to_rows(),
            beta0: p.beta[0].matrix().to_rows(),
            beta1: p.beta[1].matrix().to_rows(),
            ring,
            act,
            connected: p.connected,
            status: p.modn_status.clone(),
            flags: p.flags.clone(),
        }
    }
}

impl TryFrom<ProfileRepr> for KProfile {
    type Error = Error;
    fn try_from(r: ProfileRepr) -> Result<Self> {
        if r.modulus < 2 {
            return Err(Error::input(format!("modulus must be at least 2, got {}", r.modulus)));
        }
        let red = [r.k0red, r.k1red];
        let modn = [r.k0n, r.k1n];
        let rho = [hom(&red[0], &modn[0], &r.rho0, "rho0")?, hom(&red[1], &modn[1], &r.rho1, "rho1")?];
        let beta = [hom(&modn[0], &red[1], &r.beta0, "beta0")?, hom(&modn[1], &red[0], &r.beta1, "beta1")?];
        let table =
            |tables: &BTreeMap<String, Sparse>, p: usize, q: usize, right: &AbelianGroup, target: &AbelianGroup| {
                let entries = tables.get(&key(p, q)).map(Vec::as_slice).unwrap_or(&[]);
                Table::from_sparse(red[p].ngens(), right.ngens(), target, entries)
            };
        let ring = [
            [table(&r.ring, 0, 0, &red[0], &red[0])?, table(&r.ring, 0, 1, &red[1], &red[1])?],
            [table(&r.ring, 1, 0, &red[0], &red[1])?, table(&r.ring, 1, 1, &red[1], &red[0])?],
        ];
        let act = [
            [table(&r.act, 0, 0, &modn[0], &modn[0])?, table(&r.act, 0, 1, &modn[1], &modn[1])?],
            [table(&r.act, 1, 0, &modn[0], &modn[1])?, table(&r.act, 1, 1, &modn[1], &modn[0])?],
        ];
        for k in r.ring.keys().chain(r.act.keys()) {
            if !["00", "01", "10", "11"].contains(&k.as_str()) {
                return Err(Error::input(format!("unknown table key {k:?}")));
            }
        }
        Ok(KProfile {
            name: r.name,
            modulus: r.modulus,
            red,
            modn,
            rho,
            beta,
            ring,
            act,
            connected: r.connected,
            modn_status: r.status,
            flags: r.flags,
        })
    }
}

impl Serialize for KProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for KProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ProfileRepr::deserialize(d)?;
        KProfile::try_from(repr).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use crate::kprofile::{mn_x_sigma_mn, KProfile};

    #[test]
    fn round_trip_is_byte_identical() {
        let p = mn_x_sigma_mn(3).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        let back: KProfile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let p = mn_x_sigma_mn(2).unwrap();
        let mut v: serde_json::Value = serde_json::to_value(&p).unwrap();
        v["ring"]["22"] = serde_json::json!([]);
        assert!(serde_json::from_value::<KProfile>(v).is_err());
    }
}
