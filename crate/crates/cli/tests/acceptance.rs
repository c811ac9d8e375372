//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p expanding-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use expanding_core::cornsweet::SET_C;
use expanding_core::enumeration::{self, DigitSequence};
use expanding_core::splitter::{
    diagnostics, split, three_value_case, Mode, SplitConfig, THRESHOLD_RTOL,
};
use expanding_core::weber::iir_from_k;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5EED_CA11;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    check: fn() -> Result<String, String>,
}

fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `iir --table` prints the five typical rows after 2-decimal rounding.
fn table_reproduction() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_expanding"))
        .args(["iir", "--table"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("exit status {:?}", out.status)
    })?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let expected = "K\tIIR\n0\t2.00\n0.01\t1.96\n0.05\t1.81\n0.1\t1.64\n1\t0.00\n";
    ensure(text == expected, || format!("got {text:?}"))?;
    Ok("rows 2.00 1.96 1.81 1.64 0.00".into())
}

/// Sequence-mode split of set C gives (173..167) | (178..173) at gap 7.
fn cornsweet_split() -> Result<String, String> {
    let c: Vec<f64> = SET_C.iter().map(|&v| f64::from(v)).collect();
    let left = [173.0, 172.0, 171.0, 170.0, 169.0, 168.0, 167.0];
    let right = [178.0, 177.0, 176.0, 175.0, 174.0, 173.0];
    // 0.01, 0.05, 0.1 are required; 0 completes the table rows below 1
    for k in [0.0, 0.01, 0.05, 0.1] {
        let config = SplitConfig::new(Mode::Sequence, k).map_err(|e| e.to_string())?;
        let seg = split(&c, &config).map_err(|e| e.to_string())?;
        ensure(seg.boundaries() == [7], || {
            format!("k={k}: boundaries {:?}", seg.boundaries())
        })?;
        let parts = seg.segment_values();
        ensure(
            parts.len() == 2 && parts[0] == left && parts[1] == right,
            || format!("k={k}: segments {parts:?}"),
        )?;
    }
    Ok("k in {0, 0.01, 0.05, 0.1}: boundary 7, two parts".into())
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Second-gap score of (0, K·I, I + K·I) equals IIR(K), and the split fires
/// iff the configured K' >= K.
fn three_value_theorem() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    let mut fired = 0;
    for trial in 0..1000 {
        let background = log_uniform(&mut rng, 0.001, 1e6);
        let k = rng.gen_range(0.001..0.999);
        let k_conf = rng.gen_range(0.001..0.999);
        let values = [0.0, k * background, background + k * background];

        let config = SplitConfig::new(Mode::Sorted, k_conf).map_err(|e| e.to_string())?;
        let d = diagnostics(&values, &config).map_err(|e| e.to_string())?;
        let iir = iir_from_k(k).map_err(|e| e.to_string())?;
        let err = rel_err(d[1].score, iir);
        worst = worst.max(err);
        ensure(err <= 1e-9, || {
            format!("trial {trial}: score {} vs IIR {iir}", d[1].score)
        })?;
        ensure(d[1].split == (k_conf >= k), || {
            format!(
                "trial {trial}: I={background} K={k} K'={k_conf} split={}",
                d[1].split
            )
        })?;
        fired += usize::from(d[1].split);

        let seg = three_value_case(background, k).map_err(|e| e.to_string())?;
        ensure(seg.boundaries() == [2], || {
            format!(
                "trial {trial}: three-value case boundaries {:?}",
                seg.boundaries()
            )
        })?;
    }
    Ok(format!(
        "1000 trials, {fired} fired, max rel err {worst:.1e}"
    ))
}

/// Decides splits from Er, Ihr and IIR evaluated one formula at a time.
fn oracle_boundaries(series: &[f64], mode: Mode, k: f64) -> Vec<usize> {
    let mut xs = series.to_vec();
    if mode == Mode::Sorted {
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }
    let gaps: Vec<f64> = xs.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let iir = (2.0 / (1.0 + k)) / (1.0 / (1.0 - k));
    (0..gaps.len())
        .filter(|&i| {
            let former = if i == 0 {
                gaps.get(1).copied().unwrap_or(0.0)
            } else {
                gaps[i - 1]
            };
            if mean <= 0.0 || gaps[i] <= former {
                return false;
            }
            let er = gaps[i] / mean;
            let ihr = gaps[i] / (gaps[i] - former);
            er / ihr >= iir * (1.0 - THRESHOLD_RTOL)
        })
        .map(|i| i + 1)
        .collect()
}

fn random_series(rng: &mut impl Rng, len: std::ops::RangeInclusive<usize>) -> Vec<f64> {
    let n = rng.gen_range(len);
    (0..n).map(|_| rng.gen_range(-100.0..=100.0)).collect()
}

/// Single-pass split agrees with the oracle; er / ihr == score where defined.
fn reduction_and_oracle() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut splits = 0;
    let mut worst: f64 = 0.0;
    for trial in 0..1000 {
        let series = random_series(&mut rng, 3..=8);
        let mode = if trial % 2 == 0 {
            Mode::Sorted
        } else {
            Mode::Sequence
        };
        let k = rng.gen_range(0.0..0.999);
        let config = SplitConfig::new(mode, k).map_err(|e| e.to_string())?;

        let seg = split(&series, &config).map_err(|e| e.to_string())?;
        let expected = oracle_boundaries(&series, mode, k);
        ensure(seg.boundaries() == expected.as_slice(), || {
            format!(
                "trial {trial}: {series:?} {mode} k={k}: {:?} vs oracle {expected:?}",
                seg.boundaries()
            )
        })?;
        splits += expected.len();

        for d in seg.diagnostics() {
            if d.gap > d.former_gap && d.mean_gap > 0.0 {
                let err = rel_err(d.er / d.ihr, d.score);
                worst = worst.max(err);
                ensure(err <= 1e-12, || {
                    format!("trial {trial} gap {}: rel err {err:e}", d.index)
                })?;
            }
        }
    }
    Ok(format!(
        "1000 series, {splits} boundaries, max identity err {worst:.1e}"
    ))
}

/// Affine maps (both modes) and reordering (sorted mode) keep boundaries.
fn invariance() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut total = 0;
    for trial in 0..500 {
        let series = random_series(&mut rng, 3..=24);
        let k = rng.gen_range(0.0..0.999);
        let a = rng.gen_range(0.01..100.0);
        let b = rng.gen_range(-1000.0..=1000.0);
        let mapped: Vec<f64> = series.iter().map(|x| a * x + b).collect();
        for mode in [Mode::Sorted, Mode::Sequence] {
            let config = SplitConfig::new(mode, k).map_err(|e| e.to_string())?;
            let base = split(&series, &config).map_err(|e| e.to_string())?;
            let moved = split(&mapped, &config).map_err(|e| e.to_string())?;
            ensure(base.boundaries() == moved.boundaries(), || {
                format!(
                    "trial {trial} {mode}: a={a} b={b}: {:?} vs {:?}",
                    base.boundaries(),
                    moved.boundaries()
                )
            })?;
            total += base.boundaries().len();
        }

        let mut shuffled = series.clone();
        shuffled.shuffle(&mut rng);
        let config = SplitConfig::new(Mode::Sorted, k).map_err(|e| e.to_string())?;
        let base = split(&series, &config).map_err(|e| e.to_string())?;
        let perm = split(&shuffled, &config).map_err(|e| e.to_string())?;
        ensure(base.boundaries() == perm.boundaries(), || {
            format!(
                "trial {trial}: permutation changed {:?} to {:?}",
                base.boundaries(),
                perm.boundaries()
            )
        })?;
    }
    Ok(format!("500 series, {total} affine boundaries checked"))
}

/// Lists the first `count` decimals by walking each length group.
fn brute_force_listing(count: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut len = 1u32;
    'outer: loop {
        for m in 1..10u64.pow(len) {
            if m % 10 != 0 {
                out.push(format!("{m:0width$}", width = len as usize));
                if out.len() == count {
                    break 'outer;
                }
            }
        }
        len += 1;
    }
    out
}

/// Round trip to 100000, the diagonal 0.1000..., and absence of its inversion.
fn enumeration_suite() -> Result<String, String> {
    const N: usize = 100_000;
    let listing = brute_force_listing(N);
    for (i, digits) in listing.iter().enumerate() {
        let n = i as u64 + 1;
        let d = enumeration::nth_decimal(n).map_err(|e| e.to_string())?;
        ensure(d.digits() == digits, || {
            format!("nth_decimal({n}) = {d}, listing has 0.{digits}")
        })?;
        let back = enumeration::index_of(digits).map_err(|e| e.to_string())?;
        ensure(back == n, || {
            format!("index_of({digits}) = {back}, expected {n}")
        })?;
    }

    let diag = enumeration::diagonal(10_000);
    let brute: Vec<u8> = (0..10_000)
        .map(|i| listing[i].as_bytes().get(i).map_or(0, |b| b - b'0'))
        .collect();
    ensure(diag.digits() == brute.as_slice(), || {
        "diagonal differs from listing".into()
    })?;
    let mut expected = vec![0u8; 10_000];
    expected[0] = 1;
    ensure(diag.digits() == expected.as_slice(), || {
        "diagonal is not 1 followed by 9999 zeros".into()
    })?;

    // Short prefixes such as 0.01 or 0.0111 are terminating decimals in their
    // own right; from length 6 on the match lies beyond position 100000.
    for prefix in (2..=40).chain([100, 1000, 10_000]) {
        let inverted = enumeration::invert(&enumeration::diagonal(prefix));
        let found = enumeration::find_in_enumeration(&inverted, N as u64);
        let text = inverted.to_string();
        let canonical = text.trim_end_matches('0');
        let scanned = listing
            .iter()
            .position(|d| d == canonical)
            .map(|i| i as u64 + 1);
        ensure(found == scanned, || {
            format!("length {prefix}: found {found:?}, scan {scanned:?}")
        })?;
        if prefix >= 6 {
            ensure(found.is_none(), || {
                format!("inverted diagonal of length {prefix} found at {found:?}")
            })?;
        }
    }
    let inverted16 = enumeration::invert(&enumeration::diagonal(16));
    ensure(
        enumeration::find_in_enumeration(&inverted16, N as u64).is_none(),
        || "inverted diagonal prefix of length 16 found".into(),
    )?;
    let diag_prefix = DigitSequence::new(expected[..16].to_vec());
    ensure(
        enumeration::find_in_enumeration(&diag_prefix, N as u64) == Some(1),
        || "diagonal prefix is not the first number".into(),
    )?;
    Ok("round trip n <= 100000, diagonal 1 + 9999 zeros, inverted prefix (len 16) absent".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "IIR table reproduction",
            budget: Duration::from_millis(100),
            check: table_reproduction,
        },
        Criterion {
            id: 2,
            name: "Cornsweet split",
            budget: Duration::from_millis(100),
            check: cornsweet_split,
        },
        Criterion {
            id: 3,
            name: "three-value theorem",
            budget: Duration::from_secs(1),
            check: three_value_theorem,
        },
        Criterion {
            id: 4,
            name: "reduction identity and oracle",
            budget: Duration::from_secs(2),
            check: reduction_and_oracle,
        },
        Criterion {
            id: 5,
            name: "invariance",
            budget: Duration::from_secs(2),
            check: invariance,
        },
        Criterion {
            id: 6,
            name: "enumeration",
            budget: Duration::from_secs(10),
            check: enumeration_suite,
        },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= c.budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over budget {:?}", c.budget)),
            Err(msg) => ("FAIL", msg),
        };
        if verdict.0 == "FAIL" {
            failed += 1;
        }
        println!(
            "[{}] AC{} {} ({:.1} ms): {}",
            verdict.0,
            c.id,
            c.name,
            elapsed.as_secs_f64() * 1e3,
            verdict.1
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
