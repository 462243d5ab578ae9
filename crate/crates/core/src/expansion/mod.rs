//! q-expansions in bipartite graphs and the flower-or-hitting-set dichotomy.

mod flow;
pub mod flower;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::VertexId;
use flow::FlowNetwork;

pub use flower::{flower_or_hitting_set, FlowerError, FlowerResult};

/// A bipartite graph given by its two sides. Identifiers are scoped per side,
/// so the same id may appear once in `a_side` and once in `b_side`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bipartition {
    pub a_side: Vec<VertexId>,
    pub b_side: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

/// `x_hat` has a q-expansion `m` into `y_hat` and no vertex of `y_hat` has a
/// neighbor outside `x_hat`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCertificate {
    pub x_hat: Vec<VertexId>,
    pub y_hat: Vec<VertexId>,
    pub m: Vec<(VertexId, VertexId)>,
    pub q: usize,
}

impl ExpansionCertificate {
    /// B-side vertices covered by `m`.
    pub fn saturated(&self) -> BTreeSet<VertexId> {
        self.m.iter().map(|&(_, b)| b).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionVariant {
    /// Requires `|B| >= q|A|` and no isolated B vertex; `x_hat` is non-empty.
    Classic,
    /// No size precondition; guarantees `|B \ y_hat| <= q |A \ x_hat|`.
    Deficiency,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("q must be at least 1")]
    ZeroQ,
    #[error("A side is empty")]
    EmptyA,
    #[error("|B| = {b} is smaller than q|A| = {qa}")]
    TooFewB { b: usize, qa: usize },
    #[error("B vertex {0} is isolated")]
    IsolatedB(VertexId),
    #[error("malformed bipartition: {0}")]
    Malformed(String),
    #[error("no valid certificate found: {0}")]
    Unverified(String),
}

/// Side-indexed adjacency built from a validated bipartition.
struct Indexed {
    a: Vec<VertexId>,
    b: Vec<VertexId>,
    a_nbrs: Vec<Vec<usize>>,
    b_nbrs: Vec<Vec<usize>>,
}

fn index(h: &Bipartition) -> Result<Indexed, ExpansionError> {
    let a_pos = positions(&h.a_side, "A")?;
    let b_pos = positions(&h.b_side, "B")?;
    let mut a_nbrs = vec![Vec::new(); h.a_side.len()];
    let mut b_nbrs = vec![Vec::new(); h.b_side.len()];
    let mut seen = BTreeSet::new();
    for &(a, b) in &h.edges {
        let (Some(&i), Some(&j)) = (a_pos.get(&a), b_pos.get(&b)) else {
            return Err(ExpansionError::Malformed(format!("edge ({a}, {b}) leaves the sides")));
        };
        if !seen.insert((i, j)) {
            return Err(ExpansionError::Malformed(format!("duplicate edge ({a}, {b})")));
        }
        a_nbrs[i].push(j);
        b_nbrs[j].push(i);
    }
    Ok(Indexed {
        a: h.a_side.clone(),
        b: h.b_side.clone(),
        a_nbrs,
        b_nbrs,
    })
}

fn positions(side: &[VertexId], name: &str) -> Result<BTreeMap<VertexId, usize>, ExpansionError> {
    let mut pos = BTreeMap::new();
    for (i, &v) in side.iter().enumerate() {
        if pos.insert(v, i).is_some() {
            return Err(ExpansionError::Malformed(format!("{v} repeated on side {name}")));
        }
    }
    Ok(pos)
}

/// Maximum q-matching followed by the closure of deficient A vertices under
/// "all neighbors of an A vertex" and "the A partner of a matched B vertex".
/// Everything outside the closure forms the certificate.
fn flow_certificate(ix: &Indexed, q: usize) -> ExpansionCertificate {
    let (na, nb) = (ix.a.len(), ix.b.len());
    let (source, sink) = (na + nb, na + nb + 1);
    let mut net = FlowNetwork::new(na + nb + 2);
    let q32 = u32::try_from(q).unwrap_or(u32::MAX);
    let src_arcs: Vec<_> = (0..na).map(|i| net.add_arc(source, i, q32)).collect();
    let mut mid_arcs = Vec::new();
    for (i, nbrs) in ix.a_nbrs.iter().enumerate() {
        for &j in nbrs {
            mid_arcs.push((i, j, net.add_arc(i, na + j, 1)));
        }
    }
    for j in 0..nb {
        net.add_arc(na + j, sink, 1);
    }
    net.max_flow(source, sink);

    let mut partner: Vec<Option<usize>> = vec![None; nb];
    for &(i, j, h) in &mid_arcs {
        if net.flow_on(h, 1) == 1 {
            partner[j] = Some(i);
        }
    }
    let mut in_z_a = vec![false; na];
    let mut in_z_b = vec![false; nb];
    let mut stack: Vec<usize> = (0..na)
        .filter(|&i| (net.flow_on(src_arcs[i], q32) as usize) < q)
        .collect();
    for &i in &stack {
        in_z_a[i] = true;
    }
    while let Some(i) = stack.pop() {
        for &j in &ix.a_nbrs[i] {
            if in_z_b[j] {
                continue;
            }
            in_z_b[j] = true;
            if let Some(p) = partner[j] {
                if !in_z_a[p] {
                    in_z_a[p] = true;
                    stack.push(p);
                }
            }
        }
    }
    let x_hat: Vec<VertexId> = (0..na).filter(|&i| !in_z_a[i]).map(|i| ix.a[i]).collect();
    let y_hat: Vec<VertexId> = (0..nb).filter(|&j| !in_z_b[j]).map(|j| ix.b[j]).collect();
    let m = mid_arcs
        .iter()
        .filter(|&&(i, _, h)| !in_z_a[i] && net.flow_on(h, 1) == 1)
        .map(|&(i, j, _)| (ix.a[i], ix.b[j]))
        .collect();
    ExpansionCertificate { x_hat, y_hat, m, q }
}

/// Classic q-expansion: a non-empty `x_hat ⊆ A` with a q-expansion into
/// `y_hat ⊆ B` and `N(y_hat) ⊆ x_hat`.
pub fn q_expansion(h: &Bipartition, q: usize) -> Result<ExpansionCertificate, ExpansionError> {
    if q == 0 {
        return Err(ExpansionError::ZeroQ);
    }
    let ix = index(h)?;
    if ix.a.is_empty() {
        return Err(ExpansionError::EmptyA);
    }
    let qa = q.saturating_mul(ix.a.len());
    if ix.b.len() < qa {
        return Err(ExpansionError::TooFewB { b: ix.b.len(), qa });
    }
    if let Some(j) = ix.b_nbrs.iter().position(|n| n.is_empty()) {
        return Err(ExpansionError::IsolatedB(ix.b[j]));
    }
    let cert = flow_certificate(&ix, q);
    let violations = check_certificate(h, &cert, ExpansionVariant::Classic);
    if violations.is_empty() {
        Ok(cert)
    } else {
        Err(ExpansionError::Unverified(violations.join("; ")))
    }
}

/// Deficiency variant: `x_hat` (possibly empty) has a q-expansion into
/// `y_hat`, `N(y_hat) ⊆ x_hat` and `|B \ y_hat| <= q |A \ x_hat|`.
pub fn new_q_expansion(h: &Bipartition, q: usize) -> Result<ExpansionCertificate, ExpansionError> {
    if q == 0 {
        return Err(ExpansionError::ZeroQ);
    }
    let ix = index(h)?;
    let cert = flow_certificate(&ix, q);
    let violations = check_certificate(h, &cert, ExpansionVariant::Deficiency);
    if violations.is_empty() {
        return Ok(cert);
    }
    if ix.a.len() + ix.b.len() <= 20 {
        if let Some(c) = exhaustive_deficiency_certificate(h, &ix, q) {
            return Ok(c);
        }
    }
    Err(ExpansionError::Unverified(violations.join("; ")))
}

fn exhaustive_deficiency_certificate(
    h: &Bipartition,
    ix: &Indexed,
    q: usize,
) -> Option<ExpansionCertificate> {
    let na = ix.a.len();
    for mask in 0u32..(1 << na) {
        let x: Vec<usize> = (0..na).filter(|i| mask >> i & 1 == 1).collect();
        let y: Vec<usize> = (0..ix.b.len())
            .filter(|&j| ix.b_nbrs[j].iter().all(|i| mask >> i & 1 == 1))
            .collect();
        let sub = Bipartition {
            a_side: x.iter().map(|&i| ix.a[i]).collect(),
            b_side: y.iter().map(|&j| ix.b[j]).collect(),
            edges: h
                .edges
                .iter()
                .filter(|(a, b)| x.iter().any(|&i| ix.a[i] == *a) && y.iter().any(|&j| ix.b[j] == *b))
                .copied()
                .collect(),
        };
        let sub_ix = index(&sub).ok()?;
        let inner = flow_certificate(&sub_ix, q);
        if inner.x_hat.len() != x.len() {
            continue;
        }
        let cert = ExpansionCertificate {
            x_hat: sub.a_side,
            y_hat: sub.b_side,
            m: inner.m,
            q,
        };
        if check_certificate(h, &cert, ExpansionVariant::Deficiency).is_empty() {
            return Some(cert);
        }
    }
    None
}

/// Independent contract check. Returns a description of every violated
/// condition; empty means the certificate is valid.
pub fn check_certificate(
    h: &Bipartition,
    cert: &ExpansionCertificate,
    variant: ExpansionVariant,
) -> Vec<String> {
    let mut bad = Vec::new();
    let a_side: BTreeSet<_> = h.a_side.iter().copied().collect();
    let b_side: BTreeSet<_> = h.b_side.iter().copied().collect();
    let edges: BTreeSet<_> = h.edges.iter().copied().collect();
    let x: BTreeSet<_> = cert.x_hat.iter().copied().collect();
    let y: BTreeSet<_> = cert.y_hat.iter().copied().collect();
    if x.len() != cert.x_hat.len() || y.len() != cert.y_hat.len() {
        bad.push("repeated vertex in x_hat or y_hat".to_string());
    }
    if !x.is_subset(&a_side) {
        bad.push("x_hat is not a subset of A".to_string());
    }
    if !y.is_subset(&b_side) {
        bad.push("y_hat is not a subset of B".to_string());
    }
    let mut a_load: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut b_load: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &(a, b) in &cert.m {
        if !edges.contains(&(a, b)) {
            bad.push(format!("m edge ({a}, {b}) is not an edge"));
        }
        if !x.contains(&a) || !y.contains(&b) {
            bad.push(format!("m edge ({a}, {b}) leaves x_hat x y_hat"));
        }
        *a_load.entry(a).or_default() += 1;
        *b_load.entry(b).or_default() += 1;
    }
    for &a in &x {
        let load = a_load.get(&a).copied().unwrap_or(0);
        if load != cert.q {
            bad.push(format!("{a} has {load} expansion edges, expected {}", cert.q));
        }
    }
    if let Some((b, _)) = b_load.iter().find(|(_, &l)| l > 1) {
        bad.push(format!("{b} is covered more than once"));
    }
    if b_load.len() != cert.q * x.len() {
        bad.push(format!(
            "{} saturated vertices, expected {}",
            b_load.len(),
            cert.q * x.len()
        ));
    }
    for &(a, b) in &h.edges {
        if y.contains(&b) && !x.contains(&a) {
            bad.push(format!("y_hat vertex {b} has neighbor {a} outside x_hat"));
        }
    }
    match variant {
        ExpansionVariant::Classic => {
            if x.is_empty() {
                bad.push("x_hat is empty".to_string());
            }
        }
        ExpansionVariant::Deficiency => {
            let outside_b = b_side.difference(&y).count();
            let outside_a = a_side.difference(&x).count();
            if outside_b > cert.q * outside_a {
                bad.push(format!(
                    "|B \\ y_hat| = {outside_b} exceeds q|A \\ x_hat| = {}",
                    cert.q * outside_a
                ));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn complete(a: &[u32], b: &[u32]) -> Bipartition {
        let mut edges = Vec::new();
        for &x in a {
            for &y in b {
                edges.push((v(x), v(y)));
            }
        }
        Bipartition {
            a_side: a.iter().map(|&i| v(i)).collect(),
            b_side: b.iter().map(|&i| v(i)).collect(),
            edges,
        }
    }

    #[test]
    fn single_a_takes_both() {
        let h = complete(&[0], &[1, 2]);
        let c = q_expansion(&h, 2).unwrap();
        assert_eq!(c.x_hat, vec![v(0)]);
        assert_eq!(c.y_hat, vec![v(1), v(2)]);
        assert_eq!(c.m.len(), 2);
    }

    #[test]
    fn complete_bipartite_passes_checker() {
        let h = complete(&[0, 1], &[10, 11, 12, 13]);
        let c = q_expansion(&h, 2).unwrap();
        assert!(check_certificate(&h, &c, ExpansionVariant::Classic).is_empty());
    }

    #[test]
    fn classic_preconditions() {
        let h = complete(&[0], &[1]);
        assert_eq!(q_expansion(&h, 2), Err(ExpansionError::TooFewB { b: 1, qa: 2 }));
        assert_eq!(q_expansion(&h, 0), Err(ExpansionError::ZeroQ));
        let mut iso = complete(&[0], &[1, 2]);
        iso.b_side.push(v(3));
        assert_eq!(q_expansion(&iso, 1), Err(ExpansionError::IsolatedB(v(3))));
    }

    #[test]
    fn deficiency_examples() {
        let empty_b = Bipartition {
            a_side: vec![v(0)],
            ..Default::default()
        };
        let c = new_q_expansion(&empty_b, 1).unwrap();
        assert!(c.y_hat.is_empty());
        let star = complete(&[0], &[1, 2, 3, 4, 5]);
        let c = new_q_expansion(&star, 4).unwrap();
        assert_eq!(c.x_hat, vec![v(0)]);
        assert_eq!(c.y_hat.len(), 5);
        assert_eq!(c.m.len(), 4);
        let h = Bipartition {
            a_side: vec![v(0), v(1)],
            b_side: vec![v(9)],
            edges: vec![(v(0), v(9))],
        };
        let c = new_q_expansion(&h, 1).unwrap();
        assert!(check_certificate(&h, &c, ExpansionVariant::Deficiency).is_empty());
    }

    #[test]
    fn checker_rejects_broken_certificates() {
        let h = complete(&[0], &[1, 2]);
        let short = ExpansionCertificate {
            x_hat: vec![v(0)],
            y_hat: vec![v(1), v(2)],
            m: vec![(v(0), v(1))],
            q: 2,
        };
        assert!(!check_certificate(&h, &short, ExpansionVariant::Classic).is_empty());
        let open = ExpansionCertificate {
            x_hat: vec![],
            y_hat: vec![v(1)],
            m: vec![],
            q: 1,
        };
        assert!(!check_certificate(&h, &open, ExpansionVariant::Deficiency).is_empty());
    }

    #[test]
    fn malformed_input_is_rejected() {
        let h = Bipartition {
            a_side: vec![v(0)],
            b_side: vec![v(1)],
            edges: vec![(v(0), v(1)), (v(0), v(1))],
        };
        assert!(matches!(new_q_expansion(&h, 1), Err(ExpansionError::Malformed(_))));
    }
}
