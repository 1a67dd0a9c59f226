use std::collections::HashMap;

use rayon::prelude::*;

use super::{apply, whitehead_generators, Orbit};
use crate::error::Result;
use crate::intersect::self_intersection;
use crate::words::{enumerate_classes_with_budget, ClassKey, DEFAULT_CLASS_BUDGET};

/// Orbits of one self-intersection number among classes up to a cap.
#[derive(Clone, Debug)]
pub struct Classification {
    pub si: u32,
    pub cap: usize,
    /// Sorted by minimal representative.
    pub orbits: Vec<Orbit>,
}

impl Classification {
    pub fn seeds(&self) -> Vec<&ClassKey> {
        self.orbits.iter().map(|o| &o.seed).collect()
    }
}

pub fn classify(si: u32, cap: usize) -> Result<Classification> {
    classify_with(si, cap, DEFAULT_CLASS_BUDGET)
}

/// Partitions all primitive classes of word length `<= cap` with the given
/// self-intersection number into capped orbits.
///
/// Two classes of length `<= cap` share an orbit iff a chain of generator
/// moves joins them without leaving length `<= cap` (peak reduction), so the
/// orbits are the connected components of the move graph on these classes.
pub fn classify_with(si: u32, cap: usize, budget: usize) -> Result<Classification> {
    let candidates: Vec<ClassKey> =
        enumerate_classes_with_budget(cap, budget)?.filter(|k| k.is_primitive()).collect();
    let keys: Vec<ClassKey> = candidates
        .into_par_iter()
        .map(|k| self_intersection(&k).map(|s| (k, s)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter_map(|(k, s)| (s == si).then_some(k))
        .collect();
    let index: HashMap<&ClassKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();

    let gens = whitehead_generators();
    let edges: Vec<(usize, usize)> = keys
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, k)| {
            let index = &index;
            gens.iter()
                .map(move |g| apply(g, k))
                .filter(move |x| x.len() <= cap)
                .map(move |x| (i, *index.get(&x).expect("moves preserve self-intersection")))
        })
        .collect();

    let mut parent: Vec<usize> = (0..keys.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, j) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let mut groups: HashMap<usize, Vec<ClassKey>> = HashMap::new();
    for (i, k) in keys.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(k.clone());
    }
    let mut orbits: Vec<Orbit> = groups
        .into_values()
        .map(|mut members| {
            members.sort_unstable();
            Orbit { seed: members[0].clone(), cap, members, complete: true }
        })
        .collect();
    orbits.sort_by(|a, b| a.seed.cmp(&b.seed));
    Ok(Classification { si, cap, orbits })
}
