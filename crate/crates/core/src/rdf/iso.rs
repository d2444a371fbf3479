//! Graph isomorphism up to blank node renaming.
//!
//! Ground triples are compared as sets. Blank nodes are partitioned by an
//! iterated neighbourhood signature (colour refinement) and a backtracking
//! search then tries only same-colour pairings, checking every triple as soon
//! as all of its blank nodes are mapped.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use super::graph::Graph;
use super::term::{Iri, Term, Triple};

/// Cap on the combined blank node count of both graphs.
pub const MAX_BLANK_NODES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graphs have {found} blank nodes combined; isomorphism search is capped at {MAX_BLANK_NODES}")]
pub struct IsomorphismLimitError {
    pub found: usize,
}

pub fn graph_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool, IsomorphismLimitError> {
    let b1 = g1.blank_nodes();
    let b2 = g2.blank_nodes();
    let found = b1.len() + b2.len();
    if found > MAX_BLANK_NODES {
        return Err(IsomorphismLimitError { found });
    }
    if g1.len() != g2.len() || b1.len() != b2.len() {
        return Ok(false);
    }
    let (ground1, blank1): (Vec<&Triple>, Vec<&Triple>) = g1.triples().iter().partition(|t| is_ground(t));
    let (ground2, blank2): (Vec<&Triple>, Vec<&Triple>) = g2.triples().iter().partition(|t| is_ground(t));
    // Both lists are sorted canonically, so equal sets compare element-wise.
    if ground1 != ground2 || blank1.len() != blank2.len() {
        return Ok(false);
    }
    if blank1.is_empty() {
        return Ok(true);
    }

    let nodes1: Vec<&str> = b1.into_iter().collect();
    let nodes2: Vec<&str> = b2.into_iter().collect();
    let colours1 = refine(&nodes1, &blank1);
    let colours2 = refine(&nodes2, &blank2);
    let mut hist1: Vec<u64> = colours1.values().copied().collect();
    let mut hist2: Vec<u64> = colours2.values().copied().collect();
    hist1.sort_unstable();
    hist2.sort_unstable();
    if hist1 != hist2 {
        return Ok(false);
    }

    // Search the most constrained nodes first.
    let mut class_size: HashMap<u64, usize> = HashMap::new();
    for c in colours1.values() {
        *class_size.entry(*c).or_default() += 1;
    }
    let mut order = nodes1.clone();
    order.sort_by_key(|n| (class_size[&colours1[n]], *n));

    let target: HashSet<&Triple> = blank2.iter().copied().collect();
    let mut search = Search {
        order: &order,
        colours1: &colours1,
        colours2: &colours2,
        candidates: &nodes2,
        triples: &blank1,
        target: &target,
        mapping: HashMap::new(),
        used: HashSet::new(),
    };
    Ok(search.extend(0))
}

fn is_ground(t: &Triple) -> bool {
    !t.subject().is_blank() && !t.object().is_blank()
}

fn blank_label(t: &Term) -> Option<&str> {
    match t {
        Term::BlankNode(l) => Some(l),
        _ => None,
    }
}

fn hash_of<T: Hash>(v: &T) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

/// Colour refinement: start from the multiset of (position, predicate,
/// ground neighbour) edges, then fold in neighbour colours until the
/// partition is stable.
fn refine<'a>(nodes: &[&'a str], triples: &[&'a Triple]) -> BTreeMap<&'a str, u64> {
    #[derive(Hash)]
    enum Edge<'t> {
        Out(&'t Iri, Option<&'t Term>, u64),
        In(&'t Iri, Option<&'t Term>, u64),
        SelfLoop(&'t Iri),
    }
    let mut colours: BTreeMap<&str, u64> = nodes.iter().map(|n| (*n, 0)).collect();
    let mut classes = 1;
    for _ in 0..=nodes.len() {
        let mut sigs: BTreeMap<&str, Vec<u64>> = nodes.iter().map(|n| (*n, Vec::new())).collect();
        for t in triples {
            let s = blank_label(t.subject());
            let o = blank_label(t.object());
            match (s, o) {
                (Some(s), Some(o)) if s == o => sigs.get_mut(s).unwrap().push(hash_of(&Edge::SelfLoop(t.predicate()))),
                _ => {
                    if let Some(s) = s {
                        let (ground, colour) = match o {
                            Some(o) => (None, colours[o]),
                            None => (Some(t.object()), 0),
                        };
                        sigs.get_mut(s).unwrap().push(hash_of(&Edge::Out(t.predicate(), ground, colour)));
                    }
                    if let Some(o) = o {
                        let (ground, colour) = match s {
                            Some(s) => (None, colours[s]),
                            None => (Some(t.subject()), 0),
                        };
                        sigs.get_mut(o).unwrap().push(hash_of(&Edge::In(t.predicate(), ground, colour)));
                    }
                }
            }
        }
        let next: BTreeMap<&str, u64> = sigs
            .into_iter()
            .map(|(n, mut sig)| {
                sig.sort_unstable();
                (n, hash_of(&(colours[n], sig)))
            })
            .collect();
        let next_classes = next.values().collect::<HashSet<_>>().len();
        colours = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    colours
}

struct Search<'a, 'b> {
    order: &'b [&'a str],
    colours1: &'b BTreeMap<&'a str, u64>,
    colours2: &'b BTreeMap<&'a str, u64>,
    candidates: &'b [&'a str],
    triples: &'b [&'a Triple],
    target: &'b HashSet<&'a Triple>,
    mapping: HashMap<&'a str, &'a str>,
    used: HashSet<&'a str>,
}

impl<'a> Search<'a, '_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let node = self.order[depth];
        let colour = self.colours1[node];
        for &cand in self.candidates {
            if self.used.contains(cand) || self.colours2[cand] != colour {
                continue;
            }
            self.mapping.insert(node, cand);
            self.used.insert(cand);
            if self.consistent(node) && self.extend(depth + 1) {
                return true;
            }
            self.mapping.remove(node);
            self.used.remove(cand);
        }
        false
    }

    /// Checks every triple touching `node` whose blank nodes are all mapped.
    fn consistent(&self, node: &str) -> bool {
        for t in self.triples {
            let s = blank_label(t.subject());
            let o = blank_label(t.object());
            if s != Some(node) && o != Some(node) {
                continue;
            }
            let map = |term: &Term, label: Option<&str>| -> Option<Term> {
                match label {
                    Some(l) => self.mapping.get(l).map(|m| Term::BlankNode((*m).to_owned())),
                    None => Some(term.clone()),
                }
            };
            let (Some(ms), Some(mo)) = (map(t.subject(), s), map(t.object(), o)) else {
                continue;
            };
            let image = match Triple::with_iri_predicate(ms, t.predicate().clone(), mo) {
                Ok(image) => image,
                Err(_) => return false,
            };
            if !self.target.contains(&image) {
                return false;
            }
        }
        true
    }
}
