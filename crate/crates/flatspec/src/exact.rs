//! Exact integer spectral engine. Amplitudes under any {I,H,N} assignment are
//! Gaussian integers times 2^{-s/2}, where s counts the H/N passes applied,
//! so a spectrum is flat iff re^2 + im^2 == 2^s holds at every index — an
//! exact check with no tolerances. For n <= 5 the engine counts whole
//! transform sets per function in microseconds via precomputed flatness
//! tables, which is what makes the exhaustive degree searches feasible.

use std::sync::OnceLock;

use crate::boolfunc::BooleanFunction;
use crate::transform::TransformSet;

/// Gate for the general tree walk (buffers of 2^n Gaussian integers per
/// recursion level, 3^n leaves).
pub const MAX_EXACT_VARS: usize = 12;

struct FlatTables {
    /// masks[r][table]: bit b is set iff the r-variable function with the
    /// given truth table is flat under the {H,N} assignment with N exactly at
    /// the bits of b (r <= 4).
    masks: [Vec<u16>; 5],
    /// Restriction index split for n = 5: for x in 0..32 under I-set `s`,
    /// ext_c[s][x] is the fixed-part index and ext_y[s][x] the free-part one.
    ext_c: Vec<[u8; 32]>,
    ext_y: Vec<[u8; 32]>,
    /// lin[m]: 32-entry truth table of x -> parity(m & x).
    lin: [u32; 32],
}

static TABLES: OnceLock<FlatTables> = OnceLock::new();

fn tables() -> &'static FlatTables {
    TABLES.get_or_init(build_tables)
}

fn build_tables() -> FlatTables {
    let mut masks: [Vec<u16>; 5] = Default::default();
    for (r, out) in masks.iter_mut().enumerate() {
        let entries = 1usize << (1 << r);
        let mut v = vec![0u16; entries];
        for (table, slot) in v.iter_mut().enumerate() {
            let mut bits = 0u16;
            for b in 0..1u32 << r {
                if hn_flat_butterfly(table as u32, r, b) {
                    bits |= 1 << b;
                }
            }
            *slot = bits;
        }
        *out = v;
    }
    let mut ext_c = vec![[0u8; 32]; 32];
    let mut ext_y = vec![[0u8; 32]; 32];
    for s in 0..32usize {
        for x in 0..32usize {
            let (mut c, mut y) = (0u8, 0u8);
            let (mut cb, mut yb) = (0, 0);
            for bit in 0..5 {
                let v = (x >> bit & 1) as u8;
                if s >> bit & 1 == 1 {
                    c |= v << cb;
                    cb += 1;
                } else {
                    y |= v << yb;
                    yb += 1;
                }
            }
            ext_c[s][x] = c;
            ext_y[s][x] = y;
        }
    }
    let mut lin = [0u32; 32];
    for (m, slot) in lin.iter_mut().enumerate() {
        for x in 0..32usize {
            *slot |= (((m & x).count_ones() & 1) as u32) << x;
        }
    }
    FlatTables {
        masks,
        ext_c,
        ext_y,
        lin,
    }
}

/// Direct exact check: is the r-variable function flat under the {H,N}
/// assignment with N at the bits of `nmask`? (r <= 5)
fn hn_flat_butterfly(table: u32, r: usize, nmask: u32) -> bool {
    let size = 1usize << r;
    let mut re = [0i64; 32];
    let mut im = [0i64; 32];
    for x in 0..size {
        re[x] = if table >> x & 1 == 1 { -1 } else { 1 };
    }
    for i in 0..r {
        let step = 1usize << i;
        let negah = nmask >> i & 1 == 1;
        let mut block = 0;
        while block < size {
            for x in block..block + step {
                let (ur, ui) = (re[x], im[x]);
                let (mut wr, mut wi) = (re[x + step], im[x + step]);
                if negah {
                    // multiply w by i
                    (wr, wi) = (-wi, wr);
                }
                re[x] = ur + wr;
                im[x] = ui + wi;
                re[x + step] = ur - wr;
                im[x + step] = ui - wi;
            }
            block += 2 * step;
        }
    }
    let target = 1i64 << r;
    (0..size).all(|k| re[k] * re[k] + im[k] * im[k] == target)
}

/// g(x) = f(x ^ k) on 5-variable truth tables.
fn xor_shuffle5(f: u32, k: usize) -> u32 {
    let mut g = f;
    if k & 1 != 0 {
        g = (g >> 1 & 0x5555_5555) | (g & 0x5555_5555) << 1;
    }
    if k & 2 != 0 {
        g = (g >> 2 & 0x3333_3333) | (g & 0x3333_3333) << 2;
    }
    if k & 4 != 0 {
        g = (g >> 4 & 0x0F0F_0F0F) | (g & 0x0F0F_0F0F) << 4;
    }
    if k & 8 != 0 {
        g = (g >> 8 & 0x00FF_00FF) | (g & 0x00FF_00FF) << 8;
    }
    if k & 16 != 0 {
        g = g.rotate_right(16);
    }
    g
}

/// All-{H,N} flatness mask of a 5-variable function via the balance
/// criterion: bit b is set iff, for every k != 0, the derivative
/// f(x) + f(x+k) + parity(x & k & b) is balanced.
fn hn_flat_mask5(f: u32, t: &FlatTables) -> u32 {
    // bal[k] bit m (m a submask of k): derivative at k with linear term m is
    // balanced.
    let mut bal = [0u32; 32];
    for k in 1..32usize {
        let base = f ^ xor_shuffle5(f, k);
        let mut m = k;
        loop {
            if (base ^ t.lin[m]).count_ones() == 16 {
                bal[k] |= 1 << m;
            }
            if m == 0 {
                break;
            }
            m = (m - 1) & k;
        }
    }
    let mut out = 0u32;
    'next_b: for b in 0..32usize {
        for (k, &bk) in bal.iter().enumerate().skip(1) {
            if bk >> (k & b) & 1 == 0 {
                continue 'next_b;
            }
        }
        out |= 1 << b;
    }
    out
}

/// {H,N} flatness mask of an n-variable function, n <= 5: bit b of the
/// result marks the assignment with N exactly at the bits of b as flat.
pub fn hn_flat_mask(table: u32, n: usize) -> u32 {
    assert!(n >= 1 && n <= 5, "hn_flat_mask needs 1 <= n <= 5, got {n}");
    let t = tables();
    if n <= 4 {
        let f = table & ((1u32 << (1 << n)) - 1);
        t.masks[n][f as usize] as u32
    } else {
        hn_flat_mask5(table, t)
    }
}

/// AND over all fixings of the I-variables in `smask` of the {H,N} flatness
/// masks of the restrictions; bit b of the result says the assignment
/// (I on smask, H/N per b on the free variables) is flat.
fn restriction_and(f: u32, n: usize, smask: u32, t: &FlatTables) -> u32 {
    if smask == 0 {
        return if n <= 4 {
            t.masks[n][f as usize] as u32
        } else {
            hn_flat_mask5(f, t)
        };
    }
    let fixed = smask.count_ones() as usize;
    let r = n - fixed;
    let mut gs = [0u32; 32];
    if n == 5 {
        let ext_c = &t.ext_c[smask as usize];
        let ext_y = &t.ext_y[smask as usize];
        for x in 0..32usize {
            gs[ext_c[x] as usize] |= (f >> x & 1) << ext_y[x];
        }
    } else {
        for x in 0..1usize << n {
            let (mut c, mut y) = (0u32, 0u32);
            let (mut cb, mut yb) = (0, 0);
            for bit in 0..n {
                let v = (x >> bit & 1) as u32;
                if smask >> bit & 1 == 1 {
                    c |= v << cb;
                    cb += 1;
                } else {
                    y |= v << yb;
                    yb += 1;
                }
            }
            gs[c as usize] |= (f >> x & 1) << y;
        }
    }
    let mut acc = if r == 4 { 0xFFFF } else { (1u32 << (1 << r)) - 1 };
    for &g in gs.iter().take(1 << fixed) {
        acc &= t.masks[r][g as usize] as u32;
        if acc == 0 {
            break;
        }
    }
    acc
}

/// Exact flat-spectrum count of an n <= 5 function (given as the low 2^n
/// bits of `table`) over a transform set, via the table engine.
pub fn count_flat_small(table: u32, n: usize, set: TransformSet) -> u64 {
    assert!(n >= 1 && n <= 5, "count_flat_small needs 1 <= n <= 5, got {n}");
    let t = tables();
    let f = if n == 5 {
        table
    } else {
        table & ((1u32 << (1 << n)) - 1)
    };
    match set {
        TransformSet::H => u64::from(restriction_and(f, n, 0, t) & 1),
        TransformSet::HN => u64::from(restriction_and(f, n, 0, t).count_ones()),
        TransformSet::IH => {
            let mut total = 0u64;
            for smask in 0..1u32 << n {
                total += u64::from(restriction_and(f, n, smask, t) & 1);
            }
            total
        }
        TransformSet::IHN => {
            let mut total = 0u64;
            for smask in 0..1u32 << n {
                total += u64::from(restriction_and(f, n, smask, t).count_ones());
            }
            total
        }
    }
}

/// Exact flat-spectrum count for any function with n <= 12: table engine for
/// n <= 5, Gaussian-integer tree walk above that.
pub fn count_flat_exact(f: &BooleanFunction, set: TransformSet) -> u64 {
    let n = f.n();
    assert!(
        n <= MAX_EXACT_VARS,
        "exact engine is gated to n <= {MAX_EXACT_VARS}, got {n}"
    );
    if n <= 5 {
        return count_flat_small(f.table_u32(), n, set);
    }
    let size = 1usize << n;
    // bufs[d] holds the amplitudes after d per-variable kernel passes.
    let mut bufs: Vec<(Vec<i64>, Vec<i64>)> =
        (0..=n).map(|_| (vec![0i64; size], vec![0i64; size])).collect();
    for x in 0..size {
        bufs[0].0[x] = if f.get(x) { -1 } else { 1 };
    }
    let mut total = 0u64;
    tree_walk(&mut bufs, 0, 0, n, set, &mut total);
    total
}

fn tree_walk(
    bufs: &mut [(Vec<i64>, Vec<i64>)],
    var: usize,
    scale: u32,
    n: usize,
    set: TransformSet,
    total: &mut u64,
) {
    if var == n {
        let (re, im) = &bufs[var];
        let target = 1i64 << scale;
        if re.iter().zip(im).all(|(a, b)| a * a + b * b == target) {
            *total += 1;
        }
        return;
    }
    let size = 1usize << n;
    let step = 1usize << var;
    for &kernel in set.kernels() {
        let passes = match kernel {
            crate::transform::Kernel::I => {
                let (src, dst) = split_bufs(bufs, var);
                dst.0.copy_from_slice(&src.0);
                dst.1.copy_from_slice(&src.1);
                0
            }
            crate::transform::Kernel::H => {
                let (src, dst) = split_bufs(bufs, var);
                let mut block = 0;
                while block < size {
                    for x in block..block + step {
                        let (ur, ui) = (src.0[x], src.1[x]);
                        let (wr, wi) = (src.0[x + step], src.1[x + step]);
                        dst.0[x] = ur + wr;
                        dst.1[x] = ui + wi;
                        dst.0[x + step] = ur - wr;
                        dst.1[x + step] = ui - wi;
                    }
                    block += 2 * step;
                }
                1
            }
            crate::transform::Kernel::N => {
                let (src, dst) = split_bufs(bufs, var);
                let mut block = 0;
                while block < size {
                    for x in block..block + step {
                        let (ur, ui) = (src.0[x], src.1[x]);
                        // w multiplied by i
                        let (wr, wi) = (-src.1[x + step], src.0[x + step]);
                        dst.0[x] = ur + wr;
                        dst.1[x] = ui + wi;
                        dst.0[x + step] = ur - wr;
                        dst.1[x + step] = ui - wi;
                    }
                    block += 2 * step;
                }
                1
            }
        };
        tree_walk(bufs, var + 1, scale + passes, n, set, total);
    }
}

/// Disjoint borrows of bufs[var] (source) and bufs[var+1] (destination).
fn split_bufs(
    bufs: &mut [(Vec<i64>, Vec<i64>)],
    var: usize,
) -> (&(Vec<i64>, Vec<i64>), &mut (Vec<i64>, Vec<i64>)) {
    let (a, b) = bufs.split_at_mut(var + 1);
    (&a[var], &mut b[0])
}
