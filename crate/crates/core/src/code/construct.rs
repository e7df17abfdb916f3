use super::{CodeSpec, Metadata, MAX_LOG_LEN};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

fn check_log_len(n: u32) -> Result<usize> {
    if n > MAX_LOG_LEN {
        return Err(Error::InvalidCode(format!(
            "n = {n} exceeds the maximum {MAX_LOG_LEN}"
        )));
    }
    Ok(1 << n)
}

/// Reed-Muller information set: all `i` with `popcount(i-1) >= n - r`.
pub fn rm_info_set(n: u32, r: u32) -> Result<Vec<usize>> {
    let len = check_log_len(n)?;
    if r > n {
        return Err(Error::InvalidCode(format!("RM order r = {r} exceeds n = {n}")));
    }
    Ok((1..=len)
        .filter(|&i| (i - 1).count_ones() >= n - r)
        .collect())
}

fn beta_weight(index0: usize, beta: f64) -> f64 {
    let mut w = 0.0;
    let mut bits = index0;
    let mut pw = 1.0;
    while bits != 0 {
        if bits & 1 == 1 {
            w += pw;
        }
        pw *= beta;
        bits >>= 1;
    }
    w
}

/// Indices `1..=len` sorted by descending β-expansion weight.
///
/// Exact ties, possible only for rational β, go to the higher index.
pub fn beta_expansion_ranking(len: usize, beta: f64) -> Result<Vec<usize>> {
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    if !(beta > 1.0) || !beta.is_finite() {
        return Err(Error::InvalidCode(format!("beta = {beta} must exceed 1")));
    }
    let weights: Vec<f64> = (0..len).map(|i| beta_weight(i, beta)).collect();
    let mut order: Vec<usize> = (1..=len).collect();
    order.sort_by(|&a, &b| match weights[b - 1].total_cmp(&weights[a - 1]) {
        Ordering::Equal => b.cmp(&a),
        o => o,
    });
    Ok(order)
}

/// The `k` most reliable indices under β-expansion, sorted ascending.
pub fn polar_info_set(n: u32, k: usize, beta: f64) -> Result<Vec<usize>> {
    let len = check_log_len(n)?;
    if k > len {
        return Err(Error::InvalidCode(format!("K = {k} exceeds N = {len}")));
    }
    let mut set: Vec<usize> = beta_expansion_ranking(len, beta)?
        .into_iter()
        .take(k)
        .collect();
    set.sort_unstable();
    Ok(set)
}

/// RM-polar information set.
///
/// Weight classes (by `popcount(i-1)`) are taken whole from the heaviest down
/// while they fit; the first class that does not fit is filled by β-expansion rank.
pub fn rm_polar_info_set(n: u32, k: usize, beta: f64) -> Result<Vec<usize>> {
    let len = check_log_len(n)?;
    if k > len {
        return Err(Error::InvalidCode(format!("K = {k} exceeds N = {len}")));
    }
    let ranking = beta_expansion_ranking(len, beta)?;
    let mut set = Vec::with_capacity(k);
    for w in (0..=n).rev() {
        let class: Vec<usize> = ranking
            .iter()
            .copied()
            .filter(|&i| (i - 1).count_ones() == w)
            .collect();
        let room = k - set.len();
        if class.len() <= room {
            set.extend(class);
        } else {
            set.extend(class.into_iter().take(room));
            break;
        }
        if set.len() == k {
            break;
        }
    }
    set.sort_unstable();
    Ok(set)
}

/// PAC-style code: frozen `u_i = XOR_{k: g_k = 1} u_{i-k}` for frozen `i > deg(g)`.
///
/// `g` is indexed from 1 (`g[0]` is `g_1`) and `deg(g)` is the last index with
/// `g_k = 1`. Frozen predecessors are substituted by their own rows, so every
/// row lists information indices only. Frozen `i <= deg(g)` are static zero.
pub fn pac_precoder(n: u32, info_set: Vec<usize>, g: &[u8]) -> Result<CodeSpec> {
    let len = check_log_len(n)?;
    if g.iter().any(|&b| b > 1) {
        return Err(Error::InvalidCode("precoder polynomial must be binary".into()));
    }
    let deg = g.iter().rposition(|&b| b == 1).map_or(0, |p| p + 1);
    let mut is_info = vec![false; len + 1];
    for &i in &info_set {
        if i == 0 || i > len {
            return Err(Error::InvalidCode(format!(
                "information index {i} outside 1..={len}"
            )));
        }
        is_info[i] = true;
    }
    // rows[i] as a dense membership vector over 1..=len
    let mut rows: Vec<Option<Vec<bool>>> = vec![None; len + 1];
    let mut out = Vec::new();
    for i in 1..=len {
        if is_info[i] || i <= deg {
            continue;
        }
        let mut acc = vec![false; i];
        for (k0, &gk) in g.iter().enumerate() {
            if gk == 0 {
                continue;
            }
            let j = i - (k0 + 1);
            if is_info[j] {
                acc[j] ^= true;
            } else if let Some(row) = &rows[j] {
                for (a, &r) in acc.iter_mut().zip(row) {
                    *a ^= r;
                }
            }
        }
        let row: Vec<usize> = (1..i).filter(|&j| acc[j]).collect();
        rows[i] = Some(acc);
        if !row.is_empty() {
            out.push((i, row));
        }
    }
    Ok(CodeSpec::new(n, info_set, out, None)?.with_metadata(Metadata::new("pac")))
}

/// A member of the dRM-polar ensemble: RM-polar information set with every
/// coefficient `v_{j,i}` (`j` in `A`, `j < i`, `i` frozen) an independent fair bit.
pub fn sample_drm_polar(n: u32, k: usize, beta: f64, seed: u64) -> Result<CodeSpec> {
    let info = rm_polar_info_set(n, k, beta)?;
    let len = 1usize << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut info_iter = 0;
    for i in 1..=len {
        if info_iter < info.len() && info[info_iter] == i {
            info_iter += 1;
            continue;
        }
        let row: Vec<usize> = info[..info_iter]
            .iter()
            .copied()
            .filter(|_| rng.random::<bool>())
            .collect();
        if !row.is_empty() {
            rows.push((i, row));
        }
    }
    let meta = Metadata {
        construction: "drm-polar".into(),
        seed: Some(seed),
        beta: Some(beta),
    };
    Ok(CodeSpec::new(n, info, rows, None)?.with_metadata(meta))
}
