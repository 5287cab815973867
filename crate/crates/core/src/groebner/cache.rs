//! Textual, versioned storage format for reduced bases.
//!
//! ```text
//! formalis-gb 1
//! ring x,y,t
//! order grevlex(x,y,t)
//! size 2
//! x*y + t
//! t^2
//! sum 8c3f0a1b2c3d4e5f
//! ```
//!
//! `sum` is FNV-1a over every preceding line. Entries that fail to decode
//! are treated as absent.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::order::MonomialOrder;
use crate::exactpoly::{Poly, VarSpec};

pub const FORMAT_VERSION: u32 = 1;

/// Key/value store for reduced bases. Implementations must tolerate
/// concurrent readers; `store` may be called concurrently as well.
pub trait BasisCache: Send + Sync {
    fn load(&self, key: &str) -> Option<String>;
    fn store(&self, key: &str, entry: &str);
}

/// In-process cache, mostly useful for tests and long batch runs.
#[derive(Default)]
pub struct MemoryCache {
    map: Mutex<HashMap<String, String>>,
}

impl MemoryCache {
    pub fn new() -> Arc<MemoryCache> {
        Arc::new(MemoryCache::default())
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl BasisCache for MemoryCache {
    fn load(&self, key: &str) -> Option<String> {
        self.map.lock().unwrap().get(key).cloned()
    }

    fn store(&self, key: &str, entry: &str) {
        self.map.lock().unwrap().insert(key.to_string(), entry.to_string());
    }
}

fn fnv1a(data: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in data.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Canonical key: ring, order and the sorted monic generators.
pub fn cache_key(ring: &VarSpec, order: &MonomialOrder, gens: &[Poly]) -> String {
    let mut g: Vec<String> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic().to_string())
        .collect();
    g.sort();
    g.dedup();
    format!(
        "ring {}; order {}; gens {}",
        ring.names().join(","),
        order,
        g.join("; ")
    )
}

pub fn encode_entry(ring: &VarSpec, order: &MonomialOrder, basis: &[Poly]) -> String {
    let mut body = format!("formalis-gb {FORMAT_VERSION}\n");
    body.push_str(&format!("ring {}\n", ring.names().join(",")));
    body.push_str(&format!("order {order}\n"));
    body.push_str(&format!("size {}\n", basis.len()));
    for p in basis {
        body.push_str(&p.to_string());
        body.push('\n');
    }
    let sum = fnv1a(&body);
    body.push_str(&format!("sum {sum:016x}\n"));
    body
}

/// Decodes an entry written by [`encode_entry`] for the given ring and order.
pub fn decode_entry(entry: &str, ring: &Arc<VarSpec>, order: &MonomialOrder) -> Option<Vec<Poly>> {
    let (body, sum_line) = entry.strip_suffix('\n')?.rsplit_once('\n')?;
    let body = format!("{body}\n");
    let sum = u64::from_str_radix(sum_line.strip_prefix("sum ")?, 16).ok()?;
    if sum != fnv1a(&body) {
        return None;
    }
    let mut lines = body.lines();
    if lines.next()? != format!("formalis-gb {FORMAT_VERSION}") {
        return None;
    }
    if lines.next()?.strip_prefix("ring ")? != ring.names().join(",") {
        return None;
    }
    if lines.next()?.strip_prefix("order ")? != order.to_string() {
        return None;
    }
    let size: usize = lines.next()?.strip_prefix("size ")?.parse().ok()?;
    let polys: Vec<Poly> = lines.map(|l| Poly::parse(l, ring).ok()).collect::<Option<_>>()?;
    if polys.len() != size || polys.iter().any(|p| p.is_zero() || p.has_negative_exponents()) {
        return None;
    }
    Some(polys)
}
