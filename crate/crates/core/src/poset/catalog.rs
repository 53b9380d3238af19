use super::{ElementId, Poset};

/// Named poset families. Variables are numbered z's first, then x's, then
/// y's, each group in index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Catalog {
    /// `x1 > x2 > ... > xn`.
    Chain(usize),
    /// `z` above the antichain `x1..xn`.
    Star(usize),
    /// `t < x1, x2 < z`.
    Diamond,
    /// `z1..zk` above `x1..xn`, every `x_j < z_i`.
    Bipartite { k: usize, n: usize },
    /// `y_m < x_j < z_i` for all indices.
    Triple { k: usize, n: usize, l: usize },
    /// Every `x_i < z_j`, and `y_i < x_i`, `y_i < x_{i+1}`.
    Fence { k: usize, n: usize },
    Antichain(usize),
}

fn named(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn layered(groups: &[Vec<String>], rels: &[(ElementId, ElementId)]) -> Poset {
    let elements = groups.iter().flatten().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Poset::new(elements, rels).expect("catalog relations are acyclic")
}

impl Catalog {
    pub fn build(self) -> Poset {
        match self {
            Catalog::Chain(n) => {
                let rels: Vec<_> = (1..n).map(|i| (i, i - 1)).collect();
                layered(&[named("x", n)], &rels)
            }
            Catalog::Star(n) => {
                let rels: Vec<_> = (1..=n).map(|i| (i, 0)).collect();
                layered(&[vec!["z".into()], named("x", n)], &rels)
            }
            Catalog::Diamond => Poset::from_names(
                &["z", "x1", "x2", "t"],
                &[("x1", "z"), ("x2", "z"), ("t", "x1"), ("t", "x2")],
            )
            .expect("diamond"),
            Catalog::Bipartite { k, n } => {
                let rels: Vec<_> = (0..n).flat_map(|j| (0..k).map(move |i| (k + j, i))).collect();
                layered(&[named("z", k), named("x", n)], &rels)
            }
            Catalog::Triple { k, n, l } => {
                let mut rels: Vec<_> = (0..n).flat_map(|j| (0..k).map(move |i| (k + j, i))).collect();
                rels.extend((0..l).flat_map(|m| (0..n).map(move |j| (k + n + m, k + j))));
                layered(&[named("z", k), named("x", n), named("y", l)], &rels)
            }
            Catalog::Fence { k, n } => {
                let m = n.saturating_sub(1);
                let mut rels: Vec<_> = (0..n).flat_map(|j| (0..k).map(move |i| (k + j, i))).collect();
                for i in 0..m {
                    rels.push((k + n + i, k + i));
                    rels.push((k + n + i, k + i + 1));
                }
                layered(&[named("z", k), named("x", n), named("y", m)], &rels)
            }
            Catalog::Antichain(n) => layered(&[named("x", n)], &[]),
        }
    }

    pub fn label(self) -> String {
        match self {
            Catalog::Chain(n) => format!("chain(n={n})"),
            Catalog::Star(n) => format!("star(n={n})"),
            Catalog::Diamond => "diamond".into(),
            Catalog::Bipartite { k, n } => format!("bipartite(k={k},n={n})"),
            Catalog::Triple { k, n, l } => format!("triple(k={k},n={n},l={l})"),
            Catalog::Fence { k, n } => format!("fence(k={k},n={n})"),
            Catalog::Antichain(n) => format!("antichain(n={n})"),
        }
    }

    /// Whether the family member has a planar Hasse diagram that stays
    /// planar after adjoining a top and a bottom. A bounded planar poset is
    /// a lattice, which rules out complete bipartite layers with both sides
    /// of size two or more.
    pub fn is_planar(self) -> bool {
        match self {
            Catalog::Chain(_) | Catalog::Star(_) | Catalog::Diamond => true,
            Catalog::Bipartite { k, n } => k <= 1 || n <= 1,
            Catalog::Triple { k, n, l } => (k <= 1 || n <= 1) && (n <= 1 || l <= 1),
            Catalog::Fence { k, .. } => k <= 1,
            Catalog::Antichain(n) => n <= 1,
        }
    }
}

/// The planar catalog used to cross-check the product formula: chains and
/// stars up to 6, the diamond, fences `P(Z_1, X_n, Y_{n-1})` up to `n = 4`,
/// and the planar members of the bipartite family up to `k, n = 3`.
pub fn planar_catalog() -> Vec<Catalog> {
    let mut out = Vec::new();
    out.extend((1..=6).map(Catalog::Chain));
    out.extend((1..=6).map(Catalog::Star));
    out.push(Catalog::Diamond);
    out.extend((1..=4).map(|n| Catalog::Fence { k: 1, n }));
    for k in 1..=3 {
        for n in 1..=3 {
            let c = Catalog::Bipartite { k, n };
            if c.is_planar() {
                out.push(c);
            }
        }
    }
    out
}

impl Poset {
    /// Disjoint union; the second poset's variables are shifted past the
    /// first's and clashing names get a `_2` suffix.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let shift = self.vars().iter().max().map_or(0, |m| m + 1);
        let mut elements: Vec<(String, usize)> = self.elements().map(|(_, n, v)| (n.to_string(), v)).collect();
        for (_, name, v) in other.elements() {
            let mut name = name.to_string();
            while elements.iter().any(|(n, _)| *n == name) {
                name.push_str("_2");
            }
            elements.push((name, v + shift));
        }
        let off = self.len();
        let mut rels = self.covers().to_vec();
        rels.extend(other.covers().iter().map(|&(a, b)| (a + off, b + off)));
        Poset::new(elements, &rels).expect("union of posets")
    }
}
