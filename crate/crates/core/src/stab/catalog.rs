//! Read-only table of known groups and maps, shipped as a data file.

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Deserialize;

use super::group::{FgAbGroup, GroupHom};
use super::intmat::IntMatrix;
use crate::error::{Error, Result};

const CATALOG: &str = include_str!("../../data/catalog.json");

/// `(theory, n, ring, epsilon)`, e.g. `("W", 0, "dyadic", 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogKey {
    pub theory: String,
    pub n: i64,
    pub ring: String,
    pub epsilon: i8,
}

impl CatalogKey {
    pub fn new(theory: &str, n: i64, ring: &str, epsilon: i8) -> Self {
        CatalogKey {
            theory: theory.to_string(),
            n,
            ring: normalize_ring(ring),
            epsilon,
        }
    }
}

impl std::fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {:+})", self.theory, self.n, self.ring, self.epsilon)
    }
}

fn normalize_ring(r: &str) -> String {
    match r {
        "Z'" | "Z[1/2]" | "dyadic" => "dyadic".into(),
        "R" | "reals" => "reals".into(),
        other => other.to_string(),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    rank: usize,
    torsion: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    key: CatalogKey,
    group: RawGroup,
    citation: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    name: String,
    source: CatalogKey,
    matrix: Vec<Vec<i64>>,
    citation: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    groups: Vec<RawEntry>,
    maps: Vec<RawMap>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: CatalogKey,
    pub group: FgAbGroup,
    pub citation: String,
}

/// A catalogued endomorphism of a catalogued group.
#[derive(Clone, Debug)]
pub struct CatalogMap {
    pub name: String,
    pub map: GroupHom,
    pub citation: String,
}

struct Catalog {
    groups: Vec<CatalogEntry>,
    maps: Vec<CatalogMap>,
}

fn catalog() -> &'static Catalog {
    static CELL: OnceLock<Catalog> = OnceLock::new();
    CELL.get_or_init(|| {
        let raw: RawCatalog = serde_json::from_str(CATALOG).expect("shipped catalog parses");
        let groups: Vec<CatalogEntry> = raw
            .groups
            .into_iter()
            .map(|e| {
                let orders: Vec<BigInt> = e.group.torsion.iter().map(|&d| BigInt::from(d)).collect();
                assert!(!e.citation.is_empty(), "catalog entry without citation");
                CatalogEntry {
                    key: e.key,
                    group: FgAbGroup::from_orders(e.group.rank, &orders).expect("valid orders"),
                    citation: e.citation,
                }
            })
            .collect();
        let maps = raw
            .maps
            .into_iter()
            .map(|m| {
                let g = &groups
                    .iter()
                    .find(|e| e.key == m.source)
                    .expect("catalogued map on a catalogued group")
                    .group;
                let matrix = IntMatrix::from_rows(&m.matrix);
                CatalogMap {
                    name: m.name,
                    map: GroupHom::new(g.clone(), g.clone(), matrix).expect("well-defined map"),
                    citation: m.citation,
                }
            })
            .collect();
        Catalog { groups, maps }
    })
}

pub fn catalog_lookup(key: &CatalogKey) -> Result<CatalogEntry> {
    let key = CatalogKey::new(&key.theory, key.n, &key.ring, key.epsilon);
    catalog()
        .groups
        .iter()
        .find(|e| e.key == key)
        .cloned()
        .ok_or_else(|| Error::NotCatalogued(key.to_string()))
}

pub fn catalog_map(name: &str) -> Result<CatalogMap> {
    catalog()
        .maps
        .iter()
        .find(|m| m.name == name)
        .cloned()
        .ok_or_else(|| Error::NotCatalogued(name.to_string()))
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    catalog().groups.clone()
}
