//! Thin facade over the data-parallel inner loops.
//!
//! With the default `parallel` feature the loops run on the rayon global
//! pool; without it they fall back to plain sequential iteration. Every
//! reported scalar must be reproducible bit-for-bit regardless of thread
//! count, so reductions here either preserve element order (indexed map +
//! sequential combine) or use fixed-size chunking.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const DOT_CHUNK: usize = 4096;

/// Map over 0..n collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T: Send, F: Fn(usize) -> T + Sync>(n: usize, f: F) -> Vec<T> {
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T: Send, F: Fn(usize) -> T + Sync>(n: usize, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Always-sequential variant, kept for benchmark comparisons.
pub fn map_indexed_serial<T, F: Fn(usize) -> T>(n: usize, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Apply `f(row_index, row_slice)` to each `row_len`-sized chunk of `out`.
#[cfg(feature = "parallel")]
pub fn for_each_row_mut<F: Fn(usize, &mut [f64]) + Sync>(out: &mut [f64], row_len: usize, f: F) {
    out.par_chunks_mut(row_len).enumerate().for_each(|(j, row)| f(j, row));
}

#[cfg(not(feature = "parallel"))]
pub fn for_each_row_mut<F: Fn(usize, &mut [f64]) + Sync>(out: &mut [f64], row_len: usize, f: F) {
    out.chunks_mut(row_len).enumerate().for_each(|(j, row)| f(j, row));
}

pub fn for_each_row_mut_serial<F: Fn(usize, &mut [f64])>(out: &mut [f64], row_len: usize, f: F) {
    out.chunks_mut(row_len).enumerate().for_each(|(j, row)| f(j, row));
}

/// Deterministic dot product: fixed-size chunk partial sums (computed in
/// parallel when enabled) combined sequentially in chunk order.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let n_chunks = a.len().div_ceil(DOT_CHUNK);
    let partials = map_indexed(n_chunks, |c| {
        let lo = c * DOT_CHUNK;
        let hi = (lo + DOT_CHUNK).min(a.len());
        let mut acc = 0.0;
        for i in lo..hi {
            acc += a[i] * b[i];
        }
        acc
    });
    partials.iter().sum()
}

pub fn dot_serial(a: &[f64], b: &[f64]) -> f64 {
    let n_chunks = a.len().div_ceil(DOT_CHUNK);
    (0..n_chunks)
        .map(|c| {
            let lo = c * DOT_CHUNK;
            let hi = (lo + DOT_CHUNK).min(a.len());
            let mut acc = 0.0;
            for i in lo..hi {
                acc += a[i] * b[i];
            }
            acc
        })
        .sum()
}
