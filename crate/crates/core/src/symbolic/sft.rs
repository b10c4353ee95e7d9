use crate::error::{Error, Result};
use crate::scc::strongly_connected_components;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// A subshift of finite type: an ordered alphabet and the 0/1 transition
/// matrix, stored as sorted successor lists.
///
/// Construction prunes dead symbols (no incoming or no outgoing transition)
/// to a fixed point, so every stored symbol lies on a bi-infinite path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sft {
    alphabet: Vec<u32>,
    succ: Vec<Vec<usize>>,
}

/// JSON form: `{"alphabet":[...], "transitions":[[0/1,...],...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SftDocument {
    pub alphabet: Vec<u32>,
    pub transitions: Vec<Vec<u8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transitivity {
    /// Every entry of `B^n0` is positive, `n0` least.
    Primitive { n0: usize },
    /// Irreducible with the given period > 1; no power of `B` is positive.
    Periodic { period: usize },
    NotTransitive { components: usize },
}

impl Sft {
    pub fn new(alphabet: Vec<u32>, transitions: Vec<Vec<u8>>) -> Result<Self> {
        let n = alphabet.len();
        if n == 0 {
            return Err(Error::EmptySubshift);
        }
        if transitions.len() != n || transitions.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSft(format!(
                "transition matrix must be {n}x{n}"
            )));
        }
        if transitions.iter().flatten().any(|&b| b > 1) {
            return Err(Error::InvalidSft("transition entries must be 0 or 1".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| alphabet[i]);
        if order.windows(2).any(|w| alphabet[w[0]] == alphabet[w[1]]) {
            return Err(Error::InvalidSft("alphabet symbols must be distinct".into()));
        }
        let mut rank = vec![0; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let sorted_alphabet: Vec<u32> = order.iter().map(|&i| alphabet[i]).collect();
        let mut succ = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if transitions[i][j] == 1 {
                    succ[rank[i]].push(rank[j]);
                }
            }
        }
        Self::from_successors(sorted_alphabet, succ)
    }

    /// Build from a strictly increasing alphabet and successor index lists,
    /// pruning dead symbols.
    pub fn from_successors(alphabet: Vec<u32>, mut succ: Vec<Vec<usize>>) -> Result<Self> {
        debug_assert!(alphabet.windows(2).all(|w| w[0] < w[1]));
        let n = alphabet.len();
        for s in succ.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        let alive = prune_dead(&succ);
        let mut remap = vec![usize::MAX; n];
        let mut kept_alphabet = Vec::new();
        for i in 0..n {
            if alive[i] {
                remap[i] = kept_alphabet.len();
                kept_alphabet.push(alphabet[i]);
            }
        }
        if kept_alphabet.is_empty() {
            return Err(Error::EmptySubshift);
        }
        let kept_succ = (0..n)
            .filter(|&i| alive[i])
            .map(|i| {
                succ[i]
                    .iter()
                    .filter(|&&j| alive[j])
                    .map(|&j| remap[j])
                    .collect()
            })
            .collect();
        Ok(Sft {
            alphabet: kept_alphabet,
            succ: kept_succ,
        })
    }

    pub fn from_document(doc: &SftDocument) -> Result<Self> {
        Sft::new(doc.alphabet.clone(), doc.transitions.clone())
    }

    pub fn to_document(&self) -> SftDocument {
        SftDocument {
            alphabet: self.alphabet.clone(),
            transitions: self.matrix(),
        }
    }

    /// Full shift on symbols `1..=n`.
    pub fn full(n: u32) -> Self {
        let alphabet: Vec<u32> = (1..=n).collect();
        let succ = (0..n as usize).map(|_| (0..n as usize).collect()).collect();
        Sft {
            alphabet,
            succ,
        }
    }

    /// Symbols {1, 2} with the transition 2 → 2 forbidden.
    pub fn golden_mean() -> Self {
        Sft::new(vec![1, 2], vec![vec![1, 1], vec![1, 0]]).expect("golden mean shift is valid")
    }

    pub fn alphabet(&self) -> &[u32] {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphabet.is_empty()
    }

    pub fn successors(&self) -> &[Vec<usize>] {
        &self.succ
    }

    pub fn index_of(&self, symbol: u32) -> Result<usize> {
        self.alphabet
            .binary_search(&symbol)
            .map_err(|_| Error::SymbolNotInAlphabet(symbol))
    }

    pub fn symbol(&self, index: usize) -> u32 {
        self.alphabet[index]
    }

    pub fn allowed_index(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    /// Whether the transition `x → y` is allowed.
    pub fn allows(&self, x: u32, y: u32) -> Result<bool> {
        Ok(self.allowed_index(self.index_of(x)?, self.index_of(y)?))
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.len();
        let mut m = vec![vec![0u8; n]; n];
        for (i, s) in self.succ.iter().enumerate() {
            for &j in s {
                m[i][j] = 1;
            }
        }
        m
    }

    /// True iff every consecutive pair of `symbols` is allowed.
    pub fn is_admissible(&self, symbols: &[u32]) -> Result<bool> {
        let idx = symbols
            .iter()
            .map(|&s| self.index_of(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(idx.windows(2).all(|w| self.allowed_index(w[0], w[1])))
    }

    /// Cyclic admissibility: also checks the wrap from last to first symbol.
    pub fn is_cyclically_admissible(&self, symbols: &[u32]) -> Result<bool> {
        if symbols.is_empty() {
            return Ok(false);
        }
        Ok(self.is_admissible(symbols)?
            && self.allows(symbols[symbols.len() - 1], symbols[0])?)
    }

    /// Number of admissible strings of length `n + 1` from `x` to `y`,
    /// i.e. the `(x, y)` entry of `B^n`.
    pub fn count_strings(&self, x: u32, y: u32, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::InvalidInput("count_strings needs n >= 1".into()));
        }
        let (xi, yi) = (self.index_of(x)?, self.index_of(y)?);
        let power = matrix_power(&self.big_matrix(), n);
        Ok(power[xi][yi].clone())
    }

    fn big_matrix(&self) -> Vec<Vec<BigUint>> {
        self.matrix()
            .into_iter()
            .map(|row| row.into_iter().map(BigUint::from).collect())
            .collect()
    }

    /// Primitivity index, or the period / component structure when no power
    /// of `B` is positive.
    pub fn certify_transitive(&self) -> Transitivity {
        let comps = strongly_connected_components(&self.succ);
        if comps.len() > 1 {
            return Transitivity::NotTransitive {
                components: comps.len(),
            };
        }
        let period = self.period();
        if period > 1 {
            return Transitivity::Periodic { period };
        }
        let n = self.len();
        let bound = n * n;
        let mut reach: Vec<Vec<bool>> = self
            .matrix()
            .into_iter()
            .map(|r| r.into_iter().map(|b| b == 1).collect())
            .collect();
        for k in 1..=bound {
            if reach.iter().all(|r| r.iter().all(|&b| b)) {
                return Transitivity::Primitive { n0: k };
            }
            reach = reach
                .iter()
                .map(|row| {
                    let mut next = vec![false; n];
                    for (i, _) in row.iter().enumerate().filter(|(_, &b)| b) {
                        for &j in &self.succ[i] {
                            next[j] = true;
                        }
                    }
                    next
                })
                .collect();
        }
        // An irreducible aperiodic matrix is primitive within the bound.
        unreachable!("irreducible aperiodic matrix not primitive within n^2")
    }

    /// Period of an irreducible transition graph: gcd of level differences
    /// along edges of a BFS layering.
    fn period(&self) -> usize {
        let n = self.len();
        let mut level = vec![usize::MAX; n];
        level[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.succ[v] {
                if level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let mut g = 0usize;
        for v in 0..n {
            for &w in &self.succ[v] {
                let diff = (level[v] + 1).abs_diff(level[w]);
                g = num_integer::gcd(g, diff);
            }
        }
        g.max(1)
    }

    /// All admissible words of the given length, in lexicographic order.
    pub fn words(&self, len: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        if len == 0 {
            out.push(Vec::new());
            return out;
        }
        let mut stack: Vec<usize> = Vec::with_capacity(len);
        fn rec(sft: &Sft, len: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<u32>>) {
            if stack.len() == len {
                out.push(stack.iter().map(|&i| sft.alphabet[i]).collect());
                return;
            }
            let choices: Vec<usize> = match stack.last() {
                None => (0..sft.len()).collect(),
                Some(&last) => sft.succ[last].clone(),
            };
            for c in choices {
                stack.push(c);
                rec(sft, len, stack, out);
                stack.pop();
            }
        }
        rec(self, len, &mut stack, &mut out);
        out
    }
}

fn prune_dead(succ: &[Vec<usize>]) -> Vec<bool> {
    let n = succ.len();
    let mut alive = vec![true; n];
    loop {
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for i in (0..n).filter(|&i| alive[i]) {
            for &j in succ[i].iter().filter(|&&j| alive[j]) {
                outdeg[i] += 1;
                indeg[j] += 1;
            }
        }
        let mut changed = false;
        for i in 0..n {
            if alive[i] && (indeg[i] == 0 || outdeg[i] == 0) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            return alive;
        }
    }
}

fn matrix_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let n = a.len();
    let mut c = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    c
}

fn matrix_power(m: &[Vec<BigUint>], mut e: usize) -> Vec<Vec<BigUint>> {
    let n = m.len();
    let mut result: Vec<Vec<BigUint>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigUint::one() } else { BigUint::zero() })
                .collect()
        })
        .collect();
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = matrix_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = matrix_mul(&base, &base);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(sft: &Sft, x: u32, y: u32, n: usize) -> u64 {
        sft.words(n + 1)
            .into_iter()
            .filter(|w| w[0] == x && w[n] == y)
            .count() as u64
    }

    #[test]
    fn admissibility() {
        let full = Sft::full(2);
        assert!(full.is_admissible(&[1, 2, 1, 2]).unwrap());
        let gm = Sft::golden_mean();
        assert!(!gm.is_admissible(&[2, 2]).unwrap());
        assert!(gm.is_admissible(&[1, 2, 1, 1, 2]).unwrap());
        assert!(matches!(
            gm.is_admissible(&[1, 3]),
            Err(Error::SymbolNotInAlphabet(3))
        ));
    }

    #[test]
    fn counts_match_enumeration() {
        let full = Sft::full(2);
        assert_eq!(full.count_strings(1, 2, 2).unwrap(), BigUint::from(2u32));
        let gm = Sft::golden_mean();
        // strings 1 _ _ _ _ 1 avoiding 22: enumeration gives 8
        assert_eq!(brute_count(&gm, 1, 1, 5), 8);
        assert_eq!(gm.count_strings(1, 1, 5).unwrap(), BigUint::from(8u32));
        for x in [1, 2] {
            for y in [1, 2] {
                let b = gm.allows(x, y).unwrap() as u32;
                assert_eq!(gm.count_strings(x, y, 1).unwrap(), BigUint::from(b));
            }
        }
    }

    #[test]
    fn counts_do_not_overflow() {
        let full = Sft::full(4);
        let c = full.count_strings(1, 1, 100).unwrap();
        assert_eq!(c, BigUint::from(4u32).pow(99));
    }

    #[test]
    fn transitivity() {
        assert_eq!(
            Sft::full(2).certify_transitive(),
            Transitivity::Primitive { n0: 1 }
        );
        assert_eq!(
            Sft::golden_mean().certify_transitive(),
            Transitivity::Primitive { n0: 2 }
        );
        let loops = Sft::new(vec![1, 2], vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            loops.certify_transitive(),
            Transitivity::NotTransitive { components: 2 }
        );
        let swap = Sft::new(vec![1, 2], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.certify_transitive(), Transitivity::Periodic { period: 2 });
    }

    #[test]
    fn pruning_removes_dead_symbols() {
        // 3 has no incoming transition, 4 has no outgoing one
        let m = vec![
            vec![1, 1, 0, 1],
            vec![1, 0, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 0],
        ];
        let s = Sft::new(vec![1, 2, 3, 4], m).unwrap();
        assert_eq!(s.alphabet(), &[1, 2]);
        let dead = Sft::new(vec![1, 2], vec![vec![0, 1], vec![0, 0]]);
        assert!(matches!(dead, Err(Error::EmptySubshift)));
    }

    #[test]
    fn document_round_trip() {
        let doc: SftDocument =
            serde_json::from_str(r#"{"alphabet":[2,1],"transitions":[[0,1],[1,1]]}"#).unwrap();
        let s = Sft::from_document(&doc).unwrap();
        assert_eq!(s, Sft::golden_mean());
    }
}
