//! Bottleneck partial matching between two weighted supports.

use num_complex::Complex64;

/// Smallest threshold `t` such that the atoms of `a` and `b` admit a partial
/// matching where every matched pair has `pair_cost <= t` and every
/// unmatched atom has magnitude `<= t`.
pub(crate) fn bottleneck_distance<F>(a: &[Complex64], b: &[Complex64], pair_cost: F) -> f64
where
    F: Fn(usize, usize) -> f64,
{
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let costs: Vec<Vec<f64>> = (0..a.len())
        .map(|i| (0..b.len()).map(|j| pair_cost(i, j)).collect())
        .collect();

    let mut thresholds: Vec<f64> = costs.iter().flatten().copied().collect();
    thresholds.extend(a.iter().chain(b).map(|c| c.norm()));
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    // feasibility is monotone in the threshold
    let (mut lo, mut hi) = (0usize, thresholds.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(a, b, &costs, thresholds[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    thresholds[lo]
}

/// Perfect matching on the square graph where each side is padded with one
/// dummy per atom of the other side; matching an atom to its dummy leaves it
/// unmatched.
fn feasible(a: &[Complex64], b: &[Complex64], costs: &[Vec<f64>], t: f64) -> bool {
    let (na, nb) = (a.len(), b.len());
    let n = na + nb;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..na {
        for j in 0..nb {
            if costs[i][j] <= t {
                adj[i].push(j);
            }
        }
        if a[i].norm() <= t {
            adj[i].push(nb + i);
        }
    }
    for j in 0..nb {
        let left = na + j;
        if b[j].norm() <= t {
            adj[left].push(j);
        }
        adj[left].extend(nb..nb + na);
    }

    let mut owner: Vec<Option<usize>> = vec![None; n];
    for left in 0..n {
        let mut seen = vec![false; n];
        if !augment(left, &adj, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(
    left: usize,
    adj: &[Vec<usize>],
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &right in &adj[left] {
        if seen[right] {
            continue;
        }
        seen[right] = true;
        let free = match owner[right] {
            None => true,
            Some(prev) => augment(prev, adj, owner, seen),
        };
        if free {
            owner[right] = Some(left);
            return true;
        }
    }
    false
}
