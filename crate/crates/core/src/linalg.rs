//! Exact rank of sparse matrices over a field.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::Field;

pub type SparseRow<E> = Vec<(u32, E)>;

/// Rank of the matrix whose rows are given in sparse form.
///
/// Rows are eliminated lightest first. Each surviving row picks as pivot the
/// column of smallest original weight, which keeps fill-in low on the very
/// sparse Koszul differentials. A stored pivot row is zero on every earlier
/// pivot column, so eliminating in insertion order never revisits a column.
pub fn rank<F: Field>(field: &F, ncols: usize, mut rows: Vec<SparseRow<F::Elem>>) -> usize {
    rows.retain(|r| r.iter().any(|(_, c)| !field.is_zero(c)));
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    rows.sort_by_key(|r| r.len());

    let mut col_weight = vec![0u32; ncols];
    for r in &rows {
        for &(c, _) in r {
            col_weight[c as usize] += 1;
        }
    }

    let mut pivot_of_col: Vec<u32> = vec![u32::MAX; ncols];
    let mut pivots: Vec<(u32, SparseRow<F::Elem>)> = Vec::new();
    let mut acc: Vec<F::Elem> = vec![field.zero(); ncols];
    let mut touched: Vec<u32> = Vec::new();
    let mut is_touched = vec![false; ncols];
    let mut queued: Vec<bool> = Vec::new();
    let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();

    for row in rows {
        if pivots.len() == ncols {
            break;
        }
        for (c, v) in row {
            let ci = c as usize;
            acc[ci] = field.add(&acc[ci], &v);
            if !is_touched[ci] {
                is_touched[ci] = true;
                touched.push(c);
                let p = pivot_of_col[ci];
                if p != u32::MAX && !queued[p as usize] {
                    queued[p as usize] = true;
                    heap.push(Reverse(p));
                }
            }
        }
        while let Some(Reverse(k)) = heap.pop() {
            queued[k as usize] = false;
            let (pc, prow) = &pivots[k as usize];
            let factor = acc[*pc as usize].clone();
            if field.is_zero(&factor) {
                continue;
            }
            // pivot rows are normalized to 1 at their pivot column
            for (c, v) in prow {
                let ci = *c as usize;
                acc[ci] = field.sub(&acc[ci], &field.mul(&factor, v));
                if !is_touched[ci] {
                    is_touched[ci] = true;
                    touched.push(*c);
                }
                let p = pivot_of_col[ci];
                if p != u32::MAX && p != k && !queued[p as usize] {
                    queued[p as usize] = true;
                    heap.push(Reverse(p));
                }
            }
        }

        let mut reduced: SparseRow<F::Elem> = Vec::new();
        for &c in &touched {
            let ci = c as usize;
            if !field.is_zero(&acc[ci]) {
                reduced.push((c, std::mem::replace(&mut acc[ci], field.zero())));
            }
            is_touched[ci] = false;
        }
        touched.clear();
        if reduced.is_empty() {
            continue;
        }
        let &(pc, ref pv) = reduced
            .iter()
            .min_by_key(|(c, _)| (col_weight[*c as usize], *c))
            .expect("nonempty");
        let inv = field.inv(pv);
        let normalized: SparseRow<F::Elem> = reduced.iter().map(|(c, v)| (*c, field.mul(v, &inv))).collect();
        pivot_of_col[pc as usize] = pivots.len() as u32;
        pivots.push((pc, normalized));
        queued.push(false);
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn dense_rank(p: u32, m: &[Vec<u32>]) -> usize {
        let f = PrimeField::new(p).unwrap();
        let mut m: Vec<Vec<u32>> = m.to_vec();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(r) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, r);
            let inv = f.inv(&m[rank][c]);
            for r2 in 0..m.len() {
                if r2 != rank && m[r2][c] != 0 {
                    let factor = f.mul(&m[r2][c], &inv);
                    for c2 in 0..ncols {
                        let sub = f.mul(&factor, &m[rank][c2]);
                        m[r2][c2] = f.sub(&m[r2][c2], &sub);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_sparse(m: &[Vec<u32>]) -> Vec<SparseRow<u32>> {
        m.iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c as u32, *v)).collect())
            .collect()
    }

    #[test]
    fn small_examples() {
        let f = PrimeField::default();
        assert_eq!(rank(&f, 3, vec![]), 0);
        assert_eq!(rank(&f, 2, vec![vec![(0, 1), (1, 1)], vec![(0, 2), (1, 2)]]), 1);
        assert_eq!(rank(&f, 2, vec![vec![(0, 1)], vec![(1, 1)], vec![(0, 1), (1, 1)]]), 2);
        // singular mod 3 only
        let f3 = PrimeField::new(3).unwrap();
        let m = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 1)]];
        assert_eq!(rank(&f3, 2, m.clone()), 1);
        assert_eq!(rank(&PrimeField::new(5).unwrap(), 2, m), 2);
    }

    proptest! {
        #[test]
        fn agrees_with_dense_elimination(
            rows in 0usize..9,
            cols in 1usize..9,
            seed in proptest::collection::vec(0u32..7, 81),
            p in prop::sample::select(vec![2u32, 3, 7, 32003]),
        ) {
            // mostly zeros so pivot choice and fill-in are exercised
            let m: Vec<Vec<u32>> = (0..rows)
                .map(|r| (0..cols).map(|c| {
                    let v = seed[(r * 9 + c) % seed.len()];
                    if v < 4 { 0 } else { v % p }
                }).collect())
                .collect();
            let f = PrimeField::new(p).unwrap();
            prop_assert_eq!(rank(&f, cols, to_sparse(&m)), dense_rank(p, &m));
        }
    }
}
