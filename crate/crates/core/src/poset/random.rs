use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ElementId, Poset, SeparatingSubset};

/// Random relations `j < i` for `i < j`, each with probability `density`.
/// The identity labeling is therefore always a linear extension.
fn random_relations(rng: &mut ChaCha8Rng, offset: usize, n: usize, density: f64) -> Vec<(ElementId, ElementId)> {
    let density = density.clamp(0.0, 1.0);
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rels.push((offset + j, offset + i));
            }
        }
    }
    rels
}

/// Deterministic random poset on `n` elements named `x1..xn`.
pub fn random_poset(seed: u64, n: usize, density: f64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rels = random_relations(&mut rng, 0, n, density);
    Poset::from_relations(n, &rels).expect("relations point from later to earlier ids")
}

/// Like [`random_poset`] but connected: every element after the first is
/// first tied to a random earlier one, then extra relations are added.
pub fn random_connected_poset(seed: u64, n: usize, density: f64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rels = Vec::new();
    for j in 1..n {
        let i = rng.gen_range(0..j);
        rels.push((j, i));
    }
    rels.extend(random_relations(&mut rng, 0, n, density));
    Poset::from_relations(n, &rels).expect("relations point from later to earlier ids")
}

/// A random poset with a separating antichain of size `k`, `above` elements
/// above it and `below` elements below it. The parts above and below are
/// themselves random. Ids run above part, separator, below part.
pub fn random_separated_poset(seed: u64, above: usize, k: usize, below: usize, density: f64) -> (Poset, SeparatingSubset) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = above + k + below;
    let mut rels = random_relations(&mut rng, 0, above, density);
    rels.extend(random_relations(&mut rng, above + k, below, density));
    let members: Vec<ElementId> = (above..above + k).collect();
    for &z in &members {
        rels.extend((0..above).map(|a| (z, a)));
        rels.extend((above + k..n).map(|b| (b, z)));
    }
    let p = Poset::from_relations(n, &rels).expect("layered relations are acyclic");
    let sep = p.separator_for(super::to_mask(&members)).expect("layers separate");
    debug_assert_eq!(sep.above, (0..above).collect::<Vec<_>>());
    (p, sep)
}
