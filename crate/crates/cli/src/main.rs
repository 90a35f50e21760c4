//! Command-line driver: runs every experiment of the toolkit and emits
//! deterministic text or CSV.
//!
//! Output contract: for a fixed (command, flags, seed) the bytes written to
//! stdout and to `--out` files are identical across runs. Anything
//! non-deterministic (timings, progress) goes to stderr. CSV payloads start
//! with `#`-prefixed metadata lines, then the column header, then rows;
//! floats carry 12 significant digits.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use qkd_core::approx::{
    alice_state, inner_maximize, outer_minimize, AliceParams, DEFAULT_INNER_RESTARTS,
    DEFAULT_OUTER_RESTARTS,
};
use qkd_core::bb84::{ir_attack_exact, scale_by_fraction, Fraction};
use qkd_core::epr::{correction_gate, eve_info_bits, run_epr_attack, u1, BellLabel};
use qkd_core::gates::CanonicalParams;
use qkd_core::info::{incoherent_bound, ir_bound, shannon_reconciliation_bound, six_state_bound};
use qkd_core::protocol::{
    arc_c3, c1_redundancy_hausdorff, envelope_c2, evaluate_gate, scale_point, sweep, AttackPoint,
    SweepGrid,
};
use qkd_core::quantum::StateVec;
use qkd_core::reconcile::{cascade, flip_channel, privacy_amplify, random_bits, simple_xor_protocol};

#[derive(Parser)]
#[command(name = "qkd", version, about = "Entangled-pair BB84 simulator and analysis toolkit")]
struct Cli {
    /// Master seed for every stochastic component.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Cap the worker-thread count (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write CSV payload to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact intercept-resend numbers for plain BB84, plus the fraction line.
    Bb84 {
        /// Interception fraction; scales both information and QBER.
        #[arg(long)]
        xi: Option<f64>,
        /// Emit the analytic attack bounds over a QBER grid instead.
        #[arg(long)]
        bounds: bool,
    },
    /// CSV of the analytic attack bounds over a QBER grid.
    Bounds {
        /// Grid points on [0, 1/2].
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Lattice sweep of the non-local gate under all six configurations.
    Sweep {
        /// Lattice points per axis on [0, pi].
        #[arg(long, default_value_t = 33)]
        steps: usize,
        /// Interception fraction applied to every emitted point.
        #[arg(long, default_value_t = 1.0)]
        xi: f64,
    },
    /// Evaluate a single gate under all configurations.
    GateEval {
        #[arg(long)]
        c1: f64,
        #[arg(long)]
        c2: f64,
        #[arg(long)]
        c3: f64,
        #[arg(long, default_value_t = 1.0)]
        xi: f64,
    },
    /// Best-configuration curve along c2 (optionally a c3 arc) as CSV.
    Envelope {
        #[arg(long, default_value_t = 33)]
        samples: usize,
        /// Sweep c3 at this fixed c2 (radians) instead of the c2 envelope.
        #[arg(long)]
        arc_c2: Option<f64>,
    },
    /// Product-state approximation game (nested max-min optimization).
    Approx {
        /// Independent annealing chains of the outer minimization.
        #[arg(long, default_value_t = DEFAULT_OUTER_RESTARTS)]
        restarts: usize,
        /// Random starts of each inner maximization.
        #[arg(long, default_value_t = DEFAULT_INNER_RESTARTS)]
        inner_restarts: usize,
        /// Fix Alice's parameters "t1,t2,t3,a4" and run the inner
        /// maximization only.
        #[arg(long, value_name = "T1,T2,T3,A4")]
        alice_fixed: Option<String>,
    },
    /// EPR-pair attack walkthrough for the four z-basis inputs.
    Epr {
        /// Check orthonormality of the Bell images.
        #[arg(long)]
        verify_bell: bool,
        /// Print Eve's Pauli correction matrices.
        #[arg(long)]
        show_corrections: bool,
    },
    /// Error correction on a simulated binary flip channel.
    Reconcile {
        /// Key length.
        #[arg(short, long, default_value_t = 10_000)]
        n: usize,
        /// Flip probability of the channel.
        #[arg(short, long, default_value_t = 0.05)]
        p: f64,
        /// Cascade passes.
        #[arg(long, default_value_t = 4)]
        passes: usize,
        /// Run the simple XOR compare-discard protocol instead of Cascade.
        #[arg(long)]
        simple: bool,
        /// Rounds of the simple protocol.
        #[arg(long, default_value_t = 4)]
        rounds: usize,
        /// Follow reconciliation with one privacy-amplification sweep.
        #[arg(long)]
        amplify: bool,
    },
}

/// 12 significant digits, deterministic across platforms.
fn sig(x: f64) -> String {
    format!("{:.11e}", x)
}

fn payload_writer(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            let file = File::create(path)
                .with_context(|| format!("cannot create output file {}", path.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("worker pool already initialized")?;
    }
    match &cli.command {
        Command::Bb84 { xi, bounds } => cmd_bb84(&cli, *xi, *bounds),
        Command::Bounds { samples } => cmd_bounds(&cli, *samples),
        Command::Sweep { steps, xi } => cmd_sweep(&cli, *steps, *xi),
        Command::GateEval { c1, c2, c3, xi } => cmd_gate_eval(&cli, *c1, *c2, *c3, *xi),
        Command::Envelope { samples, arc_c2 } => cmd_envelope(&cli, *samples, *arc_c2),
        Command::Approx {
            restarts,
            inner_restarts,
            alice_fixed,
        } => cmd_approx(&cli, *restarts, *inner_restarts, alice_fixed.as_deref()),
        Command::Epr {
            verify_bell,
            show_corrections,
        } => cmd_epr(*verify_bell, *show_corrections),
        Command::Reconcile {
            n,
            p,
            passes,
            simple,
            rounds,
            amplify,
        } => cmd_reconcile(&cli, *n, *p, *passes, *simple, *rounds, *amplify),
    }
}

fn cmd_bb84(cli: &Cli, xi: Option<f64>, bounds: bool) -> Result<()> {
    if bounds {
        return cmd_bounds(cli, 101);
    }
    let exact = ir_attack_exact();
    println!(
        "info_per_bit={:.6} qber={:.6}",
        exact.info_bits, exact.qber
    );
    if let Some(xi) = xi {
        let fraction = Fraction::new(xi).map_err(|e| anyhow::anyhow!(e))?;
        let scaled = scale_by_fraction(exact, fraction);
        println!(
            "xi={:.6} info_per_bit={:.6} qber={:.6}",
            xi, scaled.info_bits, scaled.qber
        );
    }
    let mut w = payload_writer(&cli.out)?;
    writeln!(w, "# command: bb84")?;
    writeln!(w, "# seed: {}", cli.seed)?;
    writeln!(w, "xi,info_per_bit,qber")?;
    for k in 0..=10 {
        let fraction = Fraction::new(k as f64 / 10.0).expect("in range");
        let scaled = scale_by_fraction(exact, fraction);
        writeln!(
            w,
            "{},{},{}",
            sig(fraction.value()),
            sig(scaled.info_bits),
            sig(scaled.qber)
        )?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_bounds(cli: &Cli, samples: usize) -> Result<()> {
    if samples < 2 {
        bail!("need at least two samples");
    }
    let mut w = payload_writer(&cli.out)?;
    writeln!(w, "# command: bounds")?;
    writeln!(w, "# seed: {}", cli.seed)?;
    writeln!(w, "# six_state is empty at q = 1/2 (outside its domain)")?;
    writeln!(w, "qber,ir,incoherent,six_state")?;
    for k in 0..samples {
        let q = 0.5 * k as f64 / (samples - 1) as f64;
        let ir = ir_bound(q).map_err(|e| anyhow::anyhow!(e))?;
        let six = six_state_bound(q).map(|v| sig(v)).unwrap_or_default();
        writeln!(w, "{},{},{},{}", sig(q), sig(ir), sig(incoherent_bound(q)), six)?;
    }
    w.flush()?;
    Ok(())
}

fn write_attack_row(
    w: &mut dyn Write,
    p: &CanonicalParams,
    config: &str,
    xi: f64,
    pt: &AttackPoint,
) -> Result<()> {
    writeln!(
        w,
        "{},{},{},{},{},{},{},{},{}",
        sig(p.c1()),
        sig(p.c2()),
        sig(p.c3()),
        config,
        sig(xi),
        sig(pt.info_per_bit),
        sig(pt.qber1),
        sig(pt.qber2),
        sig(pt.qber)
    )?;
    Ok(())
}

fn cmd_sweep(cli: &Cli, steps: usize, xi: f64) -> Result<()> {
    let out = cli
        .out
        .as_ref()
        .context("sweep needs --out PATH (the CSV runs to hundreds of thousands of rows)")?;
    let fraction = Fraction::new(xi).map_err(|e| anyhow::anyhow!(e))?;
    let grid = SweepGrid::new(steps).map_err(|e| anyhow::anyhow!(e))?;
    eprintln!(
        "sweeping {} lattice points x 6 configurations...",
        grid.len()
    );
    let evaluations = sweep(&grid);

    let mut w = payload_writer(&Some(out.clone()))?;
    writeln!(w, "# command: sweep")?;
    writeln!(w, "# seed: {}", cli.seed)?;
    writeln!(w, "# steps: {steps}")?;
    writeln!(w, "# xi: {}", sig(xi))?;
    writeln!(w, "c1,c2,c3,config,xi,info_bits,qber1,qber2,qber")?;
    for eval in &evaluations {
        for (cfg, pt) in eval.config_points() {
            let scaled = scale_point(pt, fraction);
            write_attack_row(&mut *w, &eval.params, cfg.label(), xi, &scaled)?;
        }
    }
    w.flush()?;

    let hausdorff = c1_redundancy_hausdorff(&evaluations);
    eprintln!(
        "c1-redundancy check (informational): Hausdorff distance of the full \
         best-config cloud to its c1=0 slice = {:.3e} (threshold 0.02)",
        hausdorff
    );
    Ok(())
}

fn cmd_gate_eval(cli: &Cli, c1: f64, c2: f64, c3: f64, xi: f64) -> Result<()> {
    let params = CanonicalParams::new(c1, c2, c3).map_err(|e| anyhow::anyhow!(e))?;
    let fraction = Fraction::new(xi).map_err(|e| anyhow::anyhow!(e))?;
    let eval = evaluate_gate(&params);
    for (cfg, pt) in eval.config_points() {
        let scaled = scale_point(pt, fraction);
        println!(
            "config={} info_per_bit={:.6} qber1={:.6} qber2={:.6} qber={:.6}",
            cfg.label(),
            scaled.info_per_bit,
            scaled.qber1,
            scaled.qber2,
            scaled.qber
        );
    }
    let (best, pt) = eval.best_config();
    let scaled = scale_point(pt, fraction);
    println!(
        "best={} info_per_bit={:.6} qber={:.6}",
        best.label(),
        scaled.info_per_bit,
        scaled.qber
    );

    let mut w = payload_writer(&cli.out)?;
    writeln!(w, "# command: gate-eval")?;
    writeln!(w, "# seed: {}", cli.seed)?;
    writeln!(w, "c1,c2,c3,config,xi,info_bits,qber1,qber2,qber")?;
    for (cfg, pt) in eval.config_points() {
        let scaled = scale_point(pt, fraction);
        write_attack_row(&mut *w, &params, cfg.label(), xi, &scaled)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_envelope(cli: &Cli, samples: usize, arc_c2: Option<f64>) -> Result<()> {
    let curve = match arc_c2 {
        Some(c2) => arc_c3(c2, samples),
        None => envelope_c2(samples),
    };
    let mut w = payload_writer(&cli.out)?;
    writeln!(w, "# command: envelope")?;
    writeln!(w, "# seed: {}", cli.seed)?;
    match arc_c2 {
        Some(c2) => writeln!(w, "# arc over c3 at c1 = 0, c2 = {}", sig(c2))?,
        None => writeln!(w, "# envelope over c2 at c1 = c3 = 0")?,
    }
    writeln!(w, "c1,c2,c3,config,xi,info_bits,qber1,qber2,qber")?;
    for cp in &curve {
        write_attack_row(&mut *w, &cp.params, cp.config.label(), 1.0, &cp.point)?;
    }
    w.flush()?;
    Ok(())
}

fn parse_alice(spec: &str) -> Result<AliceParams> {
    let parts: Vec<f64> = spec
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .context("--alice-fixed expects four comma-separated numbers")?;
    if parts.len() != 4 {
        bail!("--alice-fixed expects exactly four numbers, got {}", parts.len());
    }
    Ok(AliceParams::new(parts[0], parts[1], parts[2], parts[3]))
}

fn print_state(label: &str, s: &StateVec) {
    let amps: Vec<String> = s
        .amps()
        .iter()
        .map(|a| format!("{:.4}{:+.4}i", a.re, a.im))
        .collect();
    println!("{label}=({})", amps.join(", "));
}

fn cmd_approx(cli: &Cli, restarts: usize, inner_restarts: usize, alice_fixed: Option<&str>) -> Result<()> {
    let started = std::time::Instant::now();
    match alice_fixed {
        Some(spec) => {
            let alice = parse_alice(spec)?;
            let (eve, g_max) = inner_maximize(&alice, inner_restarts, cli.seed);
            let error = qkd_core::approx::approximation_error(g_max);
            println!("g_max={:.6} error={:.6}", g_max, error);
            println!(
                "alice_theta=({:.6},{:.6},{:.6}) alice_alpha4={:.6}",
                alice.theta[0], alice.theta[1], alice.theta[2], alice.alpha4
            );
            println!(
                "eve_Phi={:.6} eve_Omega={:.6} eve_phi=({:.6},{:.6}) eve_omega=({:.6},{:.6})",
                eve.big_phi, eve.big_omega, eve.phi[0], eve.phi[1], eve.omega[0], eve.omega[1]
            );
            print_state("alice_state", &alice_state(&alice));
            print_state("eve_state", &qkd_core::approx::eve_state(&eve));
        }
        None => {
            let result = outer_minimize(restarts, inner_restarts, cli.seed);
            println!("e_mm={:.6} g_value={:.6}", result.e_mm, result.g_value);
            println!(
                "alice_theta=({:.6},{:.6},{:.6}) alice_alpha4={:.6}",
                result.alice.theta[0],
                result.alice.theta[1],
                result.alice.theta[2],
                result.alice.alpha4
            );
            println!(
                "eve_Phi={:.6} eve_Omega={:.6} eve_phi=({:.6},{:.6}) eve_omega=({:.6},{:.6})",
                result.eve.big_phi,
                result.eve.big_omega,
                result.eve.phi[0],
                result.eve.phi[1],
                result.eve.omega[0],
                result.eve.omega[1]
            );
            print_state("alice_state", &alice_state(&result.alice));
            print_state("eve_state", &qkd_core::approx::eve_state(&result.eve));
        }
    }
    eprintln!("wall time: {:.2?}", started.elapsed());
    Ok(())
}

fn cmd_epr(verify_bell: bool, show_corrections: bool) -> Result<()> {
    if verify_bell {
        let gate = u1();
        for bell in BellLabel::ALL {
            let (a1, a2) = bell.source_bits();
            let image = gate
                .apply(&StateVec::basis_state(4, (2 * a1 + a2) as usize))
                .expect("dimensions match");
            let overlap = image.inner(&bell.state()).norm();
            let ok = (overlap - 1.0).abs() < 1e-12;
            println!(
                "bell_check input=|{}{}> target={} overlap={:.12} {}",
                a1,
                a2,
                bell.label(),
                overlap,
                if ok { "PASS" } else { "FAIL" }
            );
            if !ok {
                bail!("Bell image check failed");
            }
        }
    }
    if show_corrections {
        for a1 in 0..2u8 {
            for a2 in 0..2u8 {
                let m = correction_gate(a1, a2);
                println!("E_{}{} =", a1, a2);
                for r in 0..2 {
                    let row: Vec<String> = (0..2)
                        .map(|c| {
                            let v = m.get(r, c);
                            format!("{:+.1}{:+.1}i", v.re, v.im)
                        })
                        .collect();
                    println!("  [{}]", row.join(", "));
                }
            }
        }
    }
    let info = eve_info_bits();
    for a1 in 0..2u8 {
        for a2 in 0..2u8 {
            let record = run_epr_attack(a1, a2);
            println!(
                "a1={} a2={} eve={}{} bob={}{} qber={:.6} eve_info={:.1}",
                record.a1,
                record.a2,
                record.eve_recovered.0,
                record.eve_recovered.1,
                record.bob_recovered.0,
                record.bob_recovered.1,
                record.qber_contrib,
                info
            );
        }
    }
    Ok(())
}

fn cmd_reconcile(
    cli: &Cli,
    n: usize,
    p: f64,
    passes: usize,
    simple: bool,
    rounds: usize,
    amplify: bool,
) -> Result<()> {
    if n == 0 {
        bail!("key length must be positive");
    }
    let alice = random_bits(n, cli.seed);
    let bob = flip_channel(&alice, p, cli.seed.wrapping_add(1)).map_err(|e| anyhow::anyhow!(e))?;
    let initial_errors = alice.iter().zip(&bob).filter(|(a, b)| a != b).count();
    println!(
        "n={} p={:.6} seed={} channel_errors={}",
        n, p, cli.seed, initial_errors
    );

    if simple {
        let (mut a, mut b) = (alice.clone(), bob.clone());
        let mut leaked = 0usize;
        for round in 1..=rounds {
            let (na, nb, report) =
                simple_xor_protocol(&a, &b, 1, cli.seed.wrapping_add(100 + round as u64))
                    .map_err(|e| anyhow::anyhow!(e))?;
            leaked += report.leaked_bits;
            a = na;
            b = nb;
            println!(
                "round={} length={} residual_errors={} leaked_bits={}",
                round, report.final_length, report.residual_errors, leaked
            );
            if a.is_empty() {
                break;
            }
        }
        return Ok(());
    }

    let p_est = if p > 0.0 { p } else { 0.05 };
    let (corrected, report) = cascade(&alice, &bob, p_est, passes, cli.seed.wrapping_add(2))
        .map_err(|e| anyhow::anyhow!(e))?;
    let floor = shannon_reconciliation_bound(n, p);
    println!(
        "cascade passes={} residual_errors={} leaked_bits={} shannon_floor={:.1} ratio={:.3}",
        report.passes,
        report.residual_errors,
        report.leaked_bits,
        floor,
        if floor > 0.0 {
            report.leaked_bits as f64 / floor
        } else {
            f64::INFINITY
        }
    );

    if amplify {
        // Demonstration mask: the adversary knows a random half of the slots.
        let mask: Vec<bool> = random_bits(n, cli.seed.wrapping_add(3))
            .into_iter()
            .map(|b| b == 1)
            .collect();
        let before = mask.iter().filter(|&&k| k).count() as f64 / n as f64;
        let (amplified, out_mask) = privacy_amplify(&corrected, &mask, n / 2, cli.seed.wrapping_add(4))
            .map_err(|e| anyhow::anyhow!(e))?;
        let after = out_mask.iter().filter(|&&k| k).count() as f64 / amplified.len() as f64;
        println!(
            "amplify length={} known_before={:.4} known_after={:.4}",
            amplified.len(),
            before,
            after
        );
    }
    Ok(())
}
