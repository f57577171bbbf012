use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// `TWR_G(L, S)` by recursive halving in polynomial space.
///
/// `TWR_G(L, S) = min over S' ⊆ S, |S'| = ⌈|S|/2⌉ of max(TWR_G(L, S'), TWR_G(L ∪ S', S − S'))`.
pub fn twr_dnc(g: &Graph, l: VertexSet, s: VertexSet) -> Result<usize> {
    twr_dnc_counted(g, l, s, &mut 0)
}

/// [`twr_dnc`], adding the number of `Q` evaluations to `steps`.
pub fn twr_dnc_counted(g: &Graph, l: VertexSet, s: VertexSet, steps: &mut u64) -> Result<usize> {
    g.check_subset(l)?;
    g.check_subset(s)?;
    if !l.is_disjoint(s) {
        return Err(Error::Overlap((l & s).bits()));
    }
    Ok(bounded(g, l, s, u32::MAX, steps) as usize)
}

/// An ordering of `S` after `L` attaining `TWR_G(L, S)`, found by re-running
/// the halving search with the optimum as the cap; polynomial space.
pub fn twr_dnc_ordering(g: &Graph, l: VertexSet, s: VertexSet) -> Result<(usize, Vec<usize>)> {
    let target = twr_dnc(g, l, s)? as u32;
    let mut order = Vec::with_capacity(s.len());
    place(g, l, s, target, &mut order);
    Ok((target as usize, order))
}

fn place(g: &Graph, l: VertexSet, s: VertexSet, target: u32, order: &mut Vec<usize>) {
    if s.len() <= 1 {
        order.extend(s.iter());
        return;
    }
    let k = s.len().div_ceil(2);
    let mut steps = 0;
    for first in s.subsets_of_size(k) {
        if bounded(g, l, first, target + 1, &mut steps) <= target
            && bounded(g, l | first, s - first, target + 1, &mut steps) <= target
        {
            place(g, l, first, target, order);
            place(g, l | first, s - first, target, order);
            return;
        }
    }
    unreachable!("some split attains the optimum");
}

/// Exact value when it is below `cap`; otherwise some value `≥ cap`.
///
/// Splits whose first half already reaches the running best are skipped, and
/// the search stops once the best matches the cost of the cheapest last vertex,
/// which bounds every ordering of `S` from below.
fn bounded(g: &Graph, l: VertexSet, s: VertexSet, cap: u32, steps: &mut u64) -> u32 {
    match s.len() {
        0 => return 0,
        1 => {
            *steps += 1;
            return g.q_size(l, s.first().unwrap());
        }
        _ => {}
    }
    let all = l | s;
    let mut floor = u32::MAX;
    for v in s {
        floor = floor.min(g.q_size(all.without(v), v));
    }
    *steps += s.len() as u64;
    if floor >= cap {
        return floor;
    }
    let k = s.len().div_ceil(2);
    let mut best = cap;
    for first in s.subsets_of_size(k) {
        let a = bounded(g, l, first, best, steps);
        if a >= best {
            continue;
        }
        let b = bounded(g, l | first, s - first, best, steps);
        best = best.min(a.max(b));
        if best <= floor {
            break;
        }
    }
    best
}
