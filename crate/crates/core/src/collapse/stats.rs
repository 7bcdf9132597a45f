//! Counting statistics for Monte Carlo checks.

/// `(freq − p) / sqrt(p(1 − p)/n)`; 0 when the expectation is degenerate and met.
pub fn binomial_z(count: u64, n: u64, p: f64) -> f64 {
    let freq = count as f64 / n as f64;
    let sd = (p * (1.0 - p) / n as f64).sqrt();
    if sd == 0.0 {
        if freq == p {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (freq - p) / sd
    }
}

pub fn binomial_sigma(n: u64, p: f64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Kolmogorov–Smirnov statistic `sup |F_n − F|`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Pearson statistic `Σ (O − E)² / E`.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> f64 {
    observed.iter().zip(expected).map(|(&o, &e)| (o as f64 - e).powi(2) / e).sum()
}

/// Pearson statistic of independence for an `r × c` contingency table.
/// Returns the statistic and its degrees of freedom.
pub fn chi_square_independence(table: &[Vec<u64>]) -> (f64, usize) {
    let rows = table.len();
    let cols = table[0].len();
    let total: u64 = table.iter().flatten().sum();
    let row_sums: Vec<u64> = table.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<u64> = (0..cols).map(|j| table.iter().map(|r| r[j]).sum()).collect();
    let mut stat = 0.0;
    for i in 0..rows {
        for j in 0..cols {
            let e = row_sums[i] as f64 * col_sums[j] as f64 / total as f64;
            if e > 0.0 {
                stat += (table[i][j] as f64 - e).powi(2) / e;
            }
        }
    }
    (stat, (rows - 1) * (cols - 1))
}

/// Sample correlation of two equally long series.
pub fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma).powi(2);
        sbb += (y - mb).powi(2);
    }
    sab / (saa * sbb).sqrt()
}

pub fn lag1_autocorrelation(a: &[f64]) -> f64 {
    correlation(&a[..a.len() - 1], &a[1..])
}
