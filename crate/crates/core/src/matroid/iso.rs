use super::Matroid3;

/// Per-element invariant: number of rank-2 flats through the element and the
/// sorted sizes of those flats.
fn invariants(m: &Matroid3) -> Option<Vec<(usize, Vec<usize>)>> {
    let flats = m.all_flats().ok()?;
    let mut sizes = vec![Vec::new(); m.n()];
    for f in &flats {
        for &e in f {
            sizes[e].push(f.len());
        }
    }
    Some(
        sizes
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                (s.len(), s)
            })
            .collect(),
    )
}

/// A permutation `p` with `{p(a), p(b), p(c)}` a non-basis of `m2` exactly when
/// `{a, b, c}` is one of `m1`, or `None`.
///
/// Elements are matched in order of increasing invariant-class size, with
/// candidates restricted to equal invariants; each extension is checked against
/// every triple it completes.
pub fn matroids_isomorphic(m1: &Matroid3, m2: &Matroid3) -> Option<Vec<usize>> {
    if m1.n() != m2.n() || m1.nonbases().len() != m2.nonbases().len() {
        return None;
    }
    let inv1 = invariants(m1)?;
    let inv2 = invariants(m2)?;
    let mut s1 = inv1.clone();
    let mut s2 = inv2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }
    let n = m1.n();
    let class_size = |i: usize| inv1.iter().filter(|x| **x == inv1[i]).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (class_size(i), i));
    let candidates: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| inv2[j] == inv1[i]).collect()).collect();

    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(m1, m2, &order, &candidates, 0, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

fn extend(
    m1: &Matroid3,
    m2: &Matroid3,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    perm: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = (0..depth).all(|i| {
            let a = order[i];
            (i + 1..depth).all(|j| {
                let b = order[j];
                m1.is_nonbasis(a, b, x) == m2.is_nonbasis(perm[a], perm[b], y)
            })
        });
        if !consistent {
            continue;
        }
        perm[x] = y;
        used[y] = true;
        if extend(m1, m2, order, candidates, depth + 1, perm, used) {
            return true;
        }
        perm[x] = usize::MAX;
        used[y] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_fano_like() {
        let m = Matroid3::new(7, [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5], [0, 5, 6]]).unwrap();
        let perm = [3, 6, 0, 1, 5, 2, 4];
        let r = m.relabeled(&perm);
        let p = matroids_isomorphic(&m, &r).unwrap();
        assert_eq!(m.relabeled(&p), r);
        // same number of non-bases, but a 4-point line
        let other = Matroid3::new(7, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3], [4, 5, 6]]).unwrap();
        assert!(matroids_isomorphic(&m, &other).is_none());
    }
}
