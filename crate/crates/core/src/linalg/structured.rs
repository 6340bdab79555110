use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::Fp;
use super::sparse::SparseSignMatrix;

type Column = Vec<(u32, u64)>;

/// `a - factor * b` over sorted sparse columns, reporting rows that enter or leave the
/// support of `a`.
fn axpy(f: &Fp, a: &[(u32, u64)], factor: u64, b: &[(u32, u64)], entered: &mut Vec<u32>, left: &mut Vec<u32>) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        let rx = a.get(x).map_or(u32::MAX, |e| e.0);
        let ry = b.get(y).map_or(u32::MAX, |e| e.0);
        if rx < ry {
            out.push(a[x]);
            x += 1;
        } else if ry < rx {
            out.push((ry, f.neg(f.mul(factor, b[y].1))));
            entered.push(ry);
            y += 1;
        } else {
            let v = f.sub_mul(a[x].1, factor, b[y].1);
            if v == 0 {
                left.push(rx);
            } else {
                out.push((rx, v));
            }
            x += 1;
            y += 1;
        }
    }
    out
}

/// Dimension of the kernel of `m` over GF(p), by sparse elimination in minimum row
/// degree order.
///
/// Each step takes a row meeting the fewest live columns, pivots on its shortest column
/// and clears the row from the others; the pivot column then drops out. A row meeting a
/// single column simply forces that column to zero. Columns reduced to nothing are the
/// kernel dimensions.
pub fn nullity_mod_p(m: &SparseSignMatrix, p: u64) -> usize {
    let f = Fp::new(p);
    let mut cols: Vec<Option<Column>> = m
        .columns()
        .map(|c| Some(c.iter().map(|&(r, x)| (r, f.from_i64(x as i64))).filter(|e| e.1 != 0).collect()))
        .collect();
    let mut nullity = 0usize;
    for c in cols.iter_mut() {
        if c.as_ref().is_some_and(Vec::is_empty) {
            *c = None;
            nullity += 1;
        }
    }
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); m.rows()];
    for (j, c) in cols.iter().enumerate() {
        for &(r, _) in c.iter().flatten() {
            row_cols[r as usize].push(j as u32);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..m.rows() as u32).filter(|&r| !row_cols[r as usize].is_empty()).map(|r| Reverse((row_cols[r as usize].len(), r))).collect();
    let (mut entered, mut left) = (Vec::new(), Vec::new());
    let mut touched = Vec::new();
    while let Some(Reverse((deg, r))) = heap.pop() {
        if row_cols[r as usize].len() != deg || deg == 0 {
            continue;
        }
        let members = std::mem::take(&mut row_cols[r as usize]);
        let &j = members.iter().min_by_key(|&&c| (cols[c as usize].as_ref().unwrap().len(), c)).unwrap();
        let pivot = cols[j as usize].take().unwrap();
        let inv = f.inv(pivot.iter().find(|e| e.0 == r).unwrap().1);
        touched.clear();
        for &(s, _) in &pivot {
            if s != r {
                let rc = &mut row_cols[s as usize];
                rc.swap_remove(rc.iter().position(|&x| x == j).unwrap());
                touched.push(s);
            }
        }
        for &c in members.iter().filter(|&&c| c != j) {
            let col = cols[c as usize].take().unwrap();
            let factor = f.mul(col.iter().find(|e| e.0 == r).unwrap().1, inv);
            entered.clear();
            left.clear();
            let next = axpy(&f, &col, factor, &pivot, &mut entered, &mut left);
            for &s in &entered {
                row_cols[s as usize].push(c);
                touched.push(s);
            }
            for &s in left.iter().filter(|&&s| s != r) {
                let rc = &mut row_cols[s as usize];
                rc.swap_remove(rc.iter().position(|&x| x == c).unwrap());
                touched.push(s);
            }
            if next.is_empty() {
                nullity += 1;
            } else {
                cols[c as usize] = Some(next);
            }
        }
        touched.sort_unstable();
        touched.dedup();
        for &s in &touched {
            let deg = row_cols[s as usize].len();
            if deg > 0 {
                heap.push(Reverse((deg, s)));
            }
        }
    }
    nullity
}
