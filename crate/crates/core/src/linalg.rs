//! Exact nullspaces of matrices over `Q(n)` given with entries in `Q[n]`.
//!
//! Elimination is fraction-free: a row update is `p*row_i - q*row_r` with
//! polynomial multipliers, after which the row is divided by the gcd of its
//! entries. Reduction continues above the pivots, so each pivot row ends up
//! as `P_i * x_{p_i} + sum_{free j} M_ij * x_j = 0` and nullspace vectors can
//! be written down with polynomial entries only.

use crate::upoly::UPoly;

/// Row-reduce in place and return the pivot columns, one per nonzero row.
fn reduce(m: &mut Vec<Vec<UPoly>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        // smallest nonzero entry keeps the multipliers small
        let best = (r..m.len())
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| (m[i][col].degree().unwrap(), entry_size(&m[i][col])));
        let Some(best) = best else { continue };
        m.swap(r, best);
        let piv = m[r][col].clone();
        for i in 0..m.len() {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let g = piv.gcd(&m[i][col]);
            let p = piv.exact_div(&g);
            let q = m[i][col].exact_div(&g);
            let (pivot_row, row) = if i < r {
                let (lo, hi) = m.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for j in 0..ncols {
                let v = &(&row[j] * &p) - &(&q * &pivot_row[j]);
                row[j] = v;
            }
            make_primitive(row);
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    pivots
}

fn entry_size(p: &UPoly) -> u64 {
    p.coeffs().iter().map(|c| c.numer().bits() + c.denom().bits()).sum()
}

fn make_primitive(row: &mut [UPoly]) {
    let mut g = UPoly::zero();
    for e in row.iter() {
        if !e.is_zero() {
            g = g.gcd(e);
            if g.degree() == Some(0) {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    if g.degree() != Some(0) {
        for e in row.iter_mut() {
            *e = e.exact_div(&g);
        }
    }
    scale_integer_primitive(row);
}

fn scale_integer_primitive(v: &mut [UPoly]) {
    let flat: Vec<_> = v.iter().flat_map(|u| u.coeffs().iter().cloned()).collect();
    if flat.is_empty() {
        return;
    }
    let s = crate::upoly::integer_content_scale(&flat);
    for e in v.iter_mut() {
        *e = e.scale(&s);
    }
}

/// A basis of the right nullspace over `Q(n)`. Each vector has polynomial
/// entries with trivial common content and is tagged by the free column it
/// was built from (that column's entry is nonzero).
pub fn nullspace(rows: Vec<Vec<UPoly>>, ncols: usize) -> Vec<(usize, Vec<UPoly>)> {
    let mut m: Vec<Vec<UPoly>> = rows.into_iter().filter(|r| r.iter().any(|e| !e.is_zero())).collect();
    for r in &mut m {
        make_primitive(r);
    }
    let pivots = reduce(&mut m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        // x_free = L, x_{p_i} = -M[i][free] * L / P_i with L = lcm of P_i
        let mut l = UPoly::one();
        for (i, &p) in pivots.iter().enumerate() {
            if !m[i][free].is_zero() {
                let g = l.gcd(&m[i][p]);
                l = &l * &m[i][p].exact_div(&g);
            }
        }
        let mut v = vec![UPoly::zero(); ncols];
        v[free] = l.clone();
        for (i, &p) in pivots.iter().enumerate() {
            if m[i][free].is_zero() {
                continue;
            }
            v[p] = -(&(&m[i][free] * &l).exact_div(&m[i][p]));
        }
        make_primitive(&mut v);
        out.push((free, v));
    }
    out
}
