/// Exponent vectors k of total degree 2..=`max_degree` with
/// Σ kᵢλᵢ = λ_target, in increasing degree and then lexicographic order.
pub fn resonant_monomials(eigenvalues: &[i64], target: usize, max_degree: u32) -> Vec<Vec<u32>> {
    assert!(target < eigenvalues.len(), "target index out of range");
    let goal = eigenvalues[target];
    let n = eigenvalues.len();
    // extreme eigenvalues among the variables from position i on
    let mut lo = vec![0i64; n + 1];
    let mut hi = vec![0i64; n + 1];
    for i in (0..n).rev() {
        lo[i] = if i + 1 == n { eigenvalues[i] } else { lo[i + 1].min(eigenvalues[i]) };
        hi[i] = if i + 1 == n { eigenvalues[i] } else { hi[i + 1].max(eigenvalues[i]) };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    for d in 2..=max_degree {
        search(eigenvalues, &lo, &hi, 0, d, goal, &mut cur, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn search(lam: &[i64], lo: &[i64], hi: &[i64], i: usize, left: u32, need: i64, cur: &mut [u32], out: &mut Vec<Vec<u32>>) {
    if i + 1 == lam.len() {
        if lam[i] * left as i64 == need {
            cur[i] = left;
            out.push(cur.to_vec());
            cur[i] = 0;
        }
        return;
    }
    let l = left as i64;
    if need < lo[i] * l || need > hi[i] * l {
        return;
    }
    // lexicographically smallest first: fewer of the earlier variables
    for e in 0..=left {
        cur[i] = e;
        search(lam, lo, hi, i + 1, left - e, need - lam[i] * e as i64, cur, out);
    }
    cur[i] = 0;
}
