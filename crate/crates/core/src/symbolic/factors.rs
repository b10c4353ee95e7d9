//! Factor sets of periodic samples and the subshift they generate.

use super::sequence::PeriodicSequence;
use super::sft::Sft;
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// All length-`m` windows of the samples, read cyclically.
pub fn factors(samples: &[PeriodicSequence], m: usize) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    if m == 0 {
        return out;
    }
    for s in samples {
        let w = s.word();
        let p = w.len();
        for i in 0..p {
            out.insert((0..m).map(|j| w[(i + j) % p]).collect());
        }
    }
    out
}

/// The `m`-block recoding of a subshift restricted to a set of allowed
/// `m`-words. Symbol `i` of `sft` stands for `blocks[i]`.
#[derive(Clone, Debug)]
pub struct BlockRecoding {
    pub sft: Sft,
    pub blocks: Vec<Vec<u32>>,
    pub block_len: usize,
}

impl BlockRecoding {
    /// Decode a path of recoded symbols into the original symbols (first
    /// symbol of each block).
    pub fn decode(&self, path: &[u32]) -> Vec<u32> {
        path.iter().map(|&s| self.blocks[s as usize][0]).collect()
    }
}

/// Points of `sft` all of whose `m`-factors lie in `allowed`.
pub fn subhorseshoe_from_factors(sft: &Sft, allowed: &BTreeSet<Vec<u32>>) -> Result<BlockRecoding> {
    let m = match allowed.iter().next() {
        None => return Err(Error::EmptyResult),
        Some(w) => w.len(),
    };
    if m == 0 || allowed.iter().any(|w| w.len() != m) {
        return Err(Error::InvalidInput("allowed words must share a positive length".into()));
    }
    for w in allowed {
        if !sft.is_admissible(w)? {
            return Err(Error::Inadmissible(format!("{w:?}")));
        }
    }
    let blocks: Vec<Vec<u32>> = allowed.iter().cloned().collect();
    // index blocks by their (m-1)-prefix
    let mut by_prefix: BTreeMap<&[u32], Vec<usize>> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        by_prefix.entry(&b[..m - 1]).or_default().push(i);
    }
    let mut succ = vec![Vec::new(); blocks.len()];
    for (i, u) in blocks.iter().enumerate() {
        if let Some(next) = by_prefix.get(&u[1..]) {
            for &j in next {
                let v = &blocks[j];
                // for m = 1 the overlap is empty and the pair itself must be allowed
                if m > 1 || sft.allows(u[0], v[0])? {
                    succ[i].push(j);
                }
            }
        }
    }
    let labels: Vec<u32> = (0..blocks.len() as u32).collect();
    let recoded = Sft::from_successors(labels, succ).map_err(|e| match e {
        Error::EmptySubshift => Error::EmptyResult,
        other => other,
    })?;
    Ok(BlockRecoding {
        sft: recoded,
        blocks,
        block_len: m,
    })
}
