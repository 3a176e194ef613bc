use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gsdecode::code::GrsCode;
use gsdecode::decoder::{multi_trial_decode, DecodeOptions};
use gsdecode::field::{Fe, PrimeField};
use gsdecode::interp::ReencodedBasis;
use gsdecode::params::{
    build_schedule, decoding_radius, e_value, johnson_bound_check, minimal_parameters, RootPolicy,
};
use gsdecode::sim::{run_experiment, run_experiment_with_threads, summarize, write_csv, ExperimentConfig};

#[derive(Parser)]
#[command(name = "gsdecode", version, about = "Multi-trial Guruswami-Sudan list decoding of GRS codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Permissible (s, l) for a decoding radius, or a table of radii.
    Params(ParamsArgs),
    /// List-decode one received word.
    Decode(DecodeArgs),
    /// Run a Monte-Carlo experiment and write per-trial CSV.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long, default_value_t = 17)]
    q: u32,
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Evaluation points, comma separated. Defaults to 1..n.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<i64>>,
    /// Column multipliers, comma separated. Defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    ws: Option<Vec<i64>>,
}

#[derive(Args)]
struct ParamsArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, conflicts_with_all = ["s", "l"])]
    tau: Option<usize>,
    #[arg(long, requires = "l")]
    s: Option<usize>,
    #[arg(long, requires = "s")]
    l: Option<usize>,
    /// Largest l in the radius table.
    #[arg(long, default_value_t = 6)]
    max_l: usize,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    received: Vec<i64>,
    #[arg(long)]
    tau: usize,
    #[arg(long)]
    reencode: bool,
    #[arg(long, default_value = "scaled")]
    reencode_basis: ReencodedBasis,
    #[arg(long, default_value = "every")]
    root_policy: RootPolicy,
    /// Print every step as a JSON line, with degree profiles.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

fn points(field: PrimeField, values: &[i64], what: &str) -> Result<Vec<Fe>, Failure> {
    let q = field.order() as i64;
    values
        .iter()
        .map(|&v| {
            if (0..q).contains(&v) {
                Ok(field.elem(v))
            } else {
                Err(usage(format!("{what} value {v} is outside [0, {q})")))
            }
        })
        .collect()
}

impl CodeArgs {
    fn build(&self) -> Result<GrsCode, Failure> {
        let field = PrimeField::new(self.q).map_err(usage)?;
        if self.n >= self.q as usize && self.alphas.is_none() {
            return Err(usage(format!("n = {} must be below q = {}", self.n, self.q)));
        }
        let alphas = match &self.alphas {
            Some(a) => points(field, a, "alpha")?,
            None => (1..=self.n as i64).map(|i| field.elem(i)).collect(),
        };
        let ws = match &self.ws {
            Some(w) => points(field, w, "w")?,
            None => vec![field.one(); self.n],
        };
        if alphas.len() != self.n || ws.len() != self.n {
            return Err(usage(format!("expected {} alphas and ws", self.n)));
        }
        GrsCode::new(field, self.k, alphas, ws).map_err(usage)
    }
}

fn johnson_radius(code: &GrsCode) -> Option<usize> {
    (0..code.n()).rev().find(|&t| johnson_bound_check(code, t))
}

fn cmd_params(args: &ParamsArgs) -> Result<(), Failure> {
    let code = args.code.build()?;
    if let Some(tau) = args.tau {
        let p = minimal_parameters(&code, tau).map_err(usage)?;
        println!("(s,l)=({},{}), E={}", p.s, p.l, e_value(&code, p.s, p.l, tau));
        return Ok(());
    }
    if let (Some(s), Some(l)) = (args.s, args.l) {
        if s == 0 || s > l {
            return Err(usage("need 1 <= s <= l"));
        }
        let tau = decoding_radius(&code, s, l);
        if tau < 0 {
            println!("(s,l)=({s},{l}), no positive radius");
        } else {
            let e = e_value(&code, s, l, tau as usize);
            println!("(s,l)=({s},{l}), tau={tau}, E={e}");
        }
        return Ok(());
    }
    println!("tau(s,l) for GRS({},{}) over F_{}", code.n(), code.k(), code.field().order());
    print!("{:>6}", "l \\ s");
    for s in 1..=args.max_l {
        print!("{s:>5}");
    }
    println!();
    for l in 1..=args.max_l {
        print!("{l:>6}");
        for s in 1..=l {
            print!("{:>5}", decoding_radius(&code, s, l));
        }
        println!();
    }
    match johnson_radius(&code) {
        Some(j) => {
            println!("minimal parameters:");
            for tau in 0..=j {
                if let Ok(p) = minimal_parameters(&code, tau) {
                    println!("  tau={tau}: (s,l)=({},{}), E={}", p.s, p.l, e_value(&code, p.s, p.l, tau));
                }
            }
            println!("Johnson bound: tau <= {j}");
        }
        None => println!("Johnson bound: no admissible radius"),
    }
    Ok(())
}

fn cmd_decode(args: &DecodeArgs) -> Result<(), Failure> {
    let code = args.code.build()?;
    if args.received.len() != code.n() {
        return Err(usage(format!(
            "received has {} entries, expected {}",
            args.received.len(),
            code.n()
        )));
    }
    let r = points(code.field(), &args.received, "received")?;
    let schedule = build_schedule(&code, args.tau, args.root_policy).map_err(usage)?;
    let opts = DecodeOptions {
        reencode: args.reencode,
        basis: args.reencode_basis,
        ..DecodeOptions::default()
    };
    let res = multi_trial_decode(&code, &r, &schedule, opts).map_err(usage)?;
    if args.verbose {
        println!("schedule: {schedule}");
        for d in &schedule.diagnostics {
            println!("note: {d}");
        }
        for rep in &res.trial_reports {
            println!("{}", serde_json::to_string(rep).expect("report serialises"));
            if let Some((input, output)) = &rep.profiles {
                print!("input degrees:\n{input}output degrees:\n{output}");
            }
        }
    }
    for c in &res.candidates {
        let word: Vec<String> = c.codeword.iter().map(|x| x.to_string()).collect();
        println!(
            "f = {}; codeword = {}; distance {}",
            c.f.to_padded_list(code.k()),
            word.join(","),
            c.distance
        );
    }
    let (s, l, tau) = res.stopped_at;
    println!("stopped at (s,l)=({s},{l}), tau={tau}");
    println!(
        "ops: mul={} add={} inv={}",
        res.ops.mul_count, res.ops.add_count, res.ops.inv_count
    );
    if res.success() {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: format!("no codeword within distance {}", args.tau),
        })
    }
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| usage(format!("{}: {e}", args.config.display())))?;
    let config = ExperimentConfig::from_json(&text).map_err(usage)?;
    config.validate().map_err(usage)?;
    let file = File::create(&args.out).map_err(|e| usage(format!("{}: {e}", args.out.display())))?;
    let records = match args.threads {
        Some(t) => run_experiment_with_threads(&config, t),
        None => run_experiment(&config),
    }
    .map_err(usage)?;
    write_csv(&records, BufWriter::new(file)).map_err(usage)?;
    println!("{:>3}  {:<28} {:>12} {:>8}", "eps", "decoder", "mean mul", "success");
    for s in summarize(&records) {
        println!(
            "{:>3}  {:<28} {:>12.1} {:>8.3}",
            s.epsilon, s.decoder, s.mean_mul, s.success_rate
        );
    }
    println!("wrote {} rows to {}", records.len(), args.out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Params(a) => cmd_params(a),
        Command::Decode(a) => cmd_decode(a),
        Command::Simulate(a) => cmd_simulate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
