//! 2-partitions (pairings) of an ordered point set and the statistics the
//! weight functions depend on: the inversion set I(V), the block
//! decomposition B(V) into crossing-connected components, the non-crossing
//! predicate, inner/outer block counts, the adjoint V*, and the embedding
//! of the symmetric groups S_r into pairings.
//!
//! Positions are 1-based throughout, matching the usual combinatorial
//! indexing of (1,...,2r).

use crate::error::PairweaveError;

/// A 2-partition of {1..n}: disjoint ordered pairs (k,l) with k < l whose
/// union is the whole point set. Crossing and block statistics are computed
/// once at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
    n: usize,
    crossings: Vec<(usize, usize)>,
    blocks: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Pairing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Pairing{:?}", self.pairs)
    }
}

/// Connected components of the crossing graph, as groups of 1-based pair
/// indices into the parent pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Vec<usize>>,
}

impl Pairing {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self, PairweaveError> {
        let n = 2 * pairs.len();
        if n == 0 {
            return Err(PairweaveError::InvalidArgument("empty pairing".into()));
        }
        let mut seen = vec![false; n + 1];
        for &(k, l) in &pairs {
            if k == 0 || l == 0 || k > n || l > n || k >= l {
                return Err(PairweaveError::InvalidArgument(format!(
                    "bad pair ({k},{l}) for n={n}"
                )));
            }
            for p in [k, l] {
                if seen[p] {
                    return Err(PairweaveError::InvalidArgument(format!(
                        "position {p} appears twice"
                    )));
                }
                seen[p] = true;
            }
        }
        pairs.sort_unstable();
        let crossings = compute_crossings(&pairs);
        let blocks = crossing_components(pairs.len(), &crossings);
        Ok(Pairing {
            pairs,
            n,
            crossings,
            blocks,
        })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Total point count (2r).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of pairs (r = #V).
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    /// The inversion set I(V) = {(i,j) | k_i < k_j < l_i < l_j}, as 1-based
    /// pair indices.
    pub fn crossing_set(&self) -> &[(usize, usize)] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn block_decomposition(&self) -> BlockDecomposition {
        BlockDecomposition {
            blocks: self.blocks.clone(),
        }
    }

    /// #B(V), the number of crossing-connected components.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_noncrossing(&self) -> bool {
        self.crossings.is_empty()
    }

    /// (outer, inner) block counts of a non-crossing pairing. A pair is
    /// inner iff some other pair covers it.
    pub fn inner_outer_counts(&self) -> Result<(usize, usize), PairweaveError> {
        if !self.is_noncrossing() {
            return Err(PairweaveError::InvalidArgument(
                "inner/outer classification requires a non-crossing pairing".into(),
            ));
        }
        let mut inner = 0;
        for (i, &(k, l)) in self.pairs.iter().enumerate() {
            let covered = self
                .pairs
                .iter()
                .enumerate()
                .any(|(j, &(kk, ll))| j != i && kk < k && l < ll);
            if covered {
                inner += 1;
            }
        }
        Ok((self.size() - inner, inner))
    }

    /// V*: reverse the order of (1,...,2r). An involution preserving all
    /// crossing statistics.
    pub fn adjoint(&self) -> Pairing {
        let n = self.n;
        let pairs = self
            .pairs
            .iter()
            .map(|&(k, l)| (n + 1 - l, n + 1 - k))
            .collect();
        Pairing::new(pairs).expect("adjoint of a valid pairing is valid")
    }
}

fn compute_crossings(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            if i == j {
                continue;
            }
            let (ki, li) = pairs[i];
            let (kj, lj) = pairs[j];
            if ki < kj && kj < li && li < lj {
                out.push((i + 1, j + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

fn crossing_components(r: usize, crossings: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for &(i, j) in crossings {
        let a = find(&mut parent, i - 1);
        let b = find(&mut parent, j - 1);
        if a != b {
            parent[a] = b;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..r {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i + 1);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Streaming enumeration of all 2-partitions of {1..n}. At each step the
/// smallest unpaired point is matched with the free partners in increasing
/// order, so the output order is deterministic and memory stays flat.
pub fn enumerate_pairings(n: usize) -> Result<PairingIter, PairweaveError> {
    if n == 0 || n % 2 != 0 {
        return Err(PairweaveError::InvalidArgument(format!(
            "pairing point count must be even and positive, got {n}"
        )));
    }
    Ok(PairingIter {
        n,
        used: vec![false; n + 1],
        stack: Vec::with_capacity(n / 2),
        started: false,
        done: false,
    })
}

pub struct PairingIter {
    n: usize,
    used: Vec<bool>,
    stack: Vec<(usize, usize)>,
    started: bool,
    done: bool,
}

impl PairingIter {
    fn smallest_free(&self) -> Option<usize> {
        (1..=self.n).find(|&p| !self.used[p])
    }

    fn descend(&mut self) {
        while self.stack.len() < self.n / 2 {
            let k = self.smallest_free().expect("incomplete matching has free points");
            self.used[k] = true;
            let l = ((k + 1)..=self.n)
                .find(|&p| !self.used[p])
                .expect("even free count");
            self.used[l] = true;
            self.stack.push((k, l));
        }
    }

    fn backtrack(&mut self) -> bool {
        while let Some((k, l)) = self.stack.pop() {
            self.used[l] = false;
            if let Some(l2) = ((l + 1)..=self.n).find(|&p| !self.used[p]) {
                self.used[l2] = true;
                self.stack.push((k, l2));
                return true;
            }
            self.used[k] = false;
        }
        false
    }
}

impl Iterator for PairingIter {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
        } else if self.backtrack() {
            self.descend();
        } else {
            self.done = true;
            return None;
        }
        Some(Pairing::new(self.stack.clone()).expect("enumeration yields valid pairings"))
    }
}

/// A permutation of {1..r}, stored as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PairweaveError> {
        let r = images.len();
        let mut seen = vec![false; r + 1];
        for &v in &images {
            if v == 0 || v > r || seen[v] {
                return Err(PairweaveError::InvalidArgument(format!(
                    "not a permutation: {images:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(r: usize) -> Self {
        Permutation {
            images: (1..=r).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size());
        Permutation {
            images: (1..=self.size()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    /// Number of inversions, equal to the Coxeter length.
    pub fn inversion_count(&self) -> usize {
        let v = &self.images;
        let mut count = 0;
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Embedding S_r -> P2(1..2r): V_pi = {(i, 2r+1-pi(i))}.
    pub fn embed(&self) -> Pairing {
        let r = self.size();
        let pairs = (1..=r).map(|i| (i, 2 * r + 1 - self.apply(i))).collect();
        Pairing::new(pairs).expect("embedding yields a valid pairing")
    }

    /// b(pi) = {r-k | pi(B_k) = B_k, 1 <= k <= r-1} where B_k = {1..k}.
    pub fn b_set(&self) -> std::collections::BTreeSet<usize> {
        let r = self.size();
        let mut out = std::collections::BTreeSet::new();
        for k in 1..r {
            if (1..=k).all(|i| self.apply(i) <= k) {
                out.insert(r - k);
            }
        }
        out
    }

    /// d(pi) = (r-1) - #b(pi): the number of distinct Coxeter generators in
    /// any reduced word for pi.
    pub fn coxeter_d(&self) -> usize {
        self.size().saturating_sub(1) - self.b_set().len()
    }
}

/// All permutations of {1..r} in lexicographic order of image sequences.
pub fn enumerate_permutations(r: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (1..=r).collect();
    loop {
        out.push(Permutation {
            images: images.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (0..r.saturating_sub(1)).rev().find(|&i| images[i] < images[i + 1]) else {
            break;
        };
        let j = (i + 1..r).rev().find(|&j| images[j] > images[i]).unwrap();
        images.swap(i, j);
        images[i + 1..].reverse();
    }
    out
}

pub fn double_factorial(n: usize) -> u64 {
    let mut acc = 1u64;
    let mut k = n as u64;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub fn catalan(r: usize) -> u64 {
    let mut c = vec![0u64; r + 1];
    c[0] = 1;
    for n in 1..=r {
        for k in 0..n {
            c[n] += c[k] * c[n - 1 - k];
        }
    }
    c[r]
}
