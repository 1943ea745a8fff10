use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use sp6cells::cells::{cells, gamma, ACertifier, AStatus, CellKind, CertifierConfig, GammaTable};
use sp6cells::hecke::{c_product_by_generators, f_coeffs, HeckeElement, KLCache};
use sp6cells::jring::{
    distinguished_in_d, j_mul_covering, lusztig_phi, parse_family_element, phi_multiplicativity, CellFamily, JElement,
};
use sp6cells::laurent::LaurentPoly;
use sp6cells::o3rep::{falsification_report, falsify_conjecture, pi_map, ConjectureFacts, Irrep, ORepClass};
use sp6cells::reference::D_LEFT_CELLS;
use sp6cells::verify::{Verifier, VerifyConfig};
use sp6cells::weyl::{evaluate, WeylElement};
use sp6cells::Error;

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

macro_rules! outp {
    ($out:expr, $($arg:tt)*) => {{
        let _ = write!($out, $($arg)*);
    }};
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "sp6cells",
    version,
    about = "Kazhdan-Lusztig cells and the asymptotic ring for Sp6"
)]
struct Cli {
    /// Kazhdan-Lusztig cache file, loaded on start and appended to on exit.
    #[arg(long, global = true, env = "SP6CELLS_CACHE")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    C,
    T,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Left,
    Right,
    TwoSided,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// P_{y,w} as a polynomial in v, and mu(y,w).
    Kl { y: String, w: String },
    /// Every z < w with mu(z,w) != 0.
    Mu { w: String },
    /// Expansion of C_x C_y (or T~_x T~_y) in the same basis.
    Prod {
        #[arg(value_enum)]
        basis: Basis,
        x: String,
        y: String,
    },
    /// Cell partition of the ball of the given radius.
    Cells {
        radius: u32,
        #[arg(long, value_enum, default_value = "left")]
        kind: Kind,
    },
    /// Certified bracket for the a-function.
    Afn {
        w: String,
        #[arg(long, default_value_t = 12)]
        radius: u32,
    },
    /// Whether w is a distinguished involution, with delta(w).
    Dist {
        w: String,
        #[arg(long, default_value_t = 12)]
        radius: u32,
    },
    /// gamma_{x,y,z}.
    Gamma {
        x: String,
        y: String,
        z: String,
        #[arg(long, default_value_t = 12)]
        radius: u32,
    },
    /// t_a t_b in J for family members, given as indices such as 2 or 2'.
    Jmul { family: String, k: String, l: String },
    /// Image of C_x in J_D, or with a second element the check that the
    /// image of C_x C_y is the product of images.
    Phi {
        x: String,
        y: Option<String>,
        #[arg(long, default_value_t = 12)]
        radius: u32,
    },
    /// Representations of O3.
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Runs every verification suite.
    VerifyPaper {
        #[arg(long, default_value_t = 12)]
        radius: u32,
        /// k + l bound for the directly computed family identities.
        #[arg(long, default_value_t = 4)]
        direct_bound: usize,
        /// k, l bound for the recursive family identity.
        #[arg(long, default_value_t = 6)]
        recursive_bound: usize,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
}

#[derive(Subcommand)]
enum RepCommand {
    /// Tensor product of irreducibles such as V(2) and eV(4).
    Tensor { a: String, b: String },
    /// The irreducible attached to a family member.
    Pi { family: String, element: String },
    /// Checks the four orbit cases against the computed products.
    Falsify,
}

struct Ctx {
    cache: Arc<KLCache>,
}

impl Ctx {
    fn certifier(&self) -> ACertifier {
        ACertifier::with_config(
            self.cache.clone(),
            CertifierConfig {
                pinned_families: false,
                ..CertifierConfig::default()
            },
        )
    }
}

fn word(s: &str) -> Result<WeylElement, Error> {
    evaluate(s)
}

/// `ξ^n` when `p` is a power of `ξ = v + v^-1`, else the polynomial in `v`.
fn coeff(p: &LaurentPoly) -> String {
    if let Some(d) = p.degree() {
        if d >= 0 && *p == LaurentPoly::xi().pow(d as u32) {
            return match d {
                0 => "1".to_string(),
                1 => "xi".to_string(),
                d => format!("xi^{d}"),
            };
        }
    }
    p.to_string()
}

fn print_expansion(out: &mut String, h: &HeckeElement) {
    if h.is_zero() {
        outln!(out, "0");
    }
    for (w, p) in h.terms() {
        outln!(out, "{}: {w}", coeff(&p));
    }
}

fn index(s: &str) -> Result<(usize, bool), Error> {
    let (digits, primed) = match s.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (s, false),
    };
    let k = digits.parse().map_err(|_| {
        Error::Config(format!(
            "invalid family index {s:?}: expected a number, optionally followed by '"
        ))
    })?;
    Ok((k, primed))
}

fn run(cli: Cli, ctx: &Ctx, out: &mut String) -> Result<u8, Error> {
    match cli.command {
        Command::Kl { y, w } => {
            let (y, w) = (word(&y)?, word(&w)?);
            outln!(out, "{}", ctx.cache.kl_poly(&y, &w));
            outln!(out, "mu = {}", ctx.cache.mu(&y, &w));
        }
        Command::Mu { w } => {
            let w = word(&w)?;
            for (z, m) in ctx.cache.mu_list(&w) {
                outln!(out, "{z}|{m}");
            }
        }
        Command::Prod { basis, x, y } => {
            let (x, y) = (word(&x)?, word(&y)?);
            match basis {
                Basis::C => print_expansion(out, &c_product_by_generators(&x, &y, &ctx.cache)),
                Basis::T => {
                    for (w, p) in f_coeffs(&x, &y) {
                        outln!(out, "{p}: {w}");
                    }
                }
            }
        }
        Command::Cells { radius, kind } => {
            let kind = match kind {
                Kind::Left => CellKind::Left,
                Kind::Right => CellKind::Right,
                Kind::TwoSided => CellKind::TwoSided,
            };
            let p = cells(radius, kind, &ctx.cache);
            outp!(out, "{}", p.report());
            for rep in &D_LEFT_CELLS {
                match p.cell_index(&rep.element()) {
                    Some(i) => outln!(out, "{} {} cell {i}", rep.name, rep.word),
                    None => outln!(out, "{} {} outside the ball", rep.name, rep.word),
                }
            }
        }
        Command::Afn { w, radius } => {
            let a = ctx.certifier().a_value(&word(&w)?, radius);
            let status = match a.status {
                AStatus::Certified => "certified",
                AStatus::Heuristic => "uncertified",
            };
            outln!(out, "a({}) = {} {status}", a.elem, a.value);
            outln!(out, "lower {} ({})", a.lower, a.lower_reason);
            outln!(out, "upper {} ({})", a.upper, a.upper_reason);
        }
        Command::Dist { w, radius } => {
            let w = word(&w)?;
            let d = ctx.certifier().is_distinguished(&w, radius)?;
            outln!(out, "distinguished = {d}");
            match ctx.cache.delta(&w) {
                Some(delta) => outln!(out, "delta = {delta}"),
                None => outln!(out, "delta = -"),
            }
        }
        Command::Gamma { x, y, z, radius } => {
            let g = gamma(&word(&x)?, &word(&y)?, &word(&z)?, &ctx.certifier(), radius)?;
            outln!(out, "{g}");
        }
        Command::Jmul { family, k, l } => {
            let family = CellFamily::parse(&family)?;
            let ((k, pk), (l, pl)) = (index(&k)?, index(&l)?);
            let (a, b) = (family.element(k, pk), family.element(l, pl));
            let mut table = GammaTable::new();
            let p = j_mul_covering(&JElement::t(a), &JElement::t(b), &mut table, &ctx.certifier())?;
            outln!(out, "{}", p.format_with(|w| family.name_of(w)));
        }
        Command::Phi { x, y, radius } => {
            let cert = ctx.certifier();
            let ds = distinguished_in_d(radius, &ctx.cache);
            let x = parse_family_element(&x)?;
            match y {
                None => outp!(out, "{}", lusztig_phi(&x, &ds, &cert)?.report()),
                Some(y) => {
                    let y = parse_family_element(&y)?;
                    let mut table = GammaTable::new();
                    let c = phi_multiplicativity(&x, &y, &ds, &mut table, &cert)?;
                    for (z, p) in &c.product_of_images {
                        outln!(out, "{z}|{}", p.to_sparse_string());
                    }
                    outln!(out, "multiplicative = {}", c.holds());
                    if !c.holds() {
                        return Ok(EXIT_FAIL);
                    }
                }
            }
        }
        Command::Rep { command } => match command {
            RepCommand::Tensor { a, b } => {
                outln!(out, "{}", Irrep::parse(&a)?.tensor(Irrep::parse(&b)?));
            }
            RepCommand::Pi { family, element } => {
                let family = CellFamily::parse(&family)?;
                let r = pi_map(family, &parse_family_element(&element)?)?;
                outln!(out, "{}", ORepClass::irrep(r));
            }
            RepCommand::Falsify => {
                let mut table = GammaTable::new();
                let facts = ConjectureFacts::compute(&mut table, &ctx.certifier())?;
                let verdicts = falsify_conjecture(&facts)?;
                outp!(out, "{}", falsification_report(&verdicts));
                if !verdicts.iter().all(|v| v.rejected) {
                    return Ok(EXIT_FAIL);
                }
            }
        },
        Command::VerifyPaper {
            radius,
            direct_bound,
            recursive_bound,
            output,
        } => {
            let config = VerifyConfig {
                radius,
                direct_bound,
                recursive_bound,
                ..VerifyConfig::default()
            };
            let report = Verifier::new(config, ctx.cache.clone())?.run_all();
            match output {
                Output::Text => outp!(out, "{}", report.text()),
                Output::Structured => outp!(out, "{}", report.structured()),
            }
            if let Some(c) = report.first_failure() {
                eprintln!("first failing check: {}.{} {}", c.suite, c.id, c.topic);
                return Ok(EXIT_FAIL);
            }
        }
    }
    Ok(0)
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidWord(_) | Error::InvalidPoly(_) | Error::Config(_) | Error::Cache(_) | Error::NotInFamily(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        cache: Arc::new(KLCache::new()),
    };
    let path = cli.cache.clone();
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        if let Err(e) = ctx.cache.load(p) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let mut out = String::new();
    let result = run(cli, &ctx, &mut out);
    // A closed stdout (for instance a pager that quit) is not an error.
    let _ = std::io::stdout().write_all(out.as_bytes());
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if usage_error(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAIL
            }
        }
    };
    if let Some(p) = &path {
        if let Err(e) = ctx.cache.save(p) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    ExitCode::from(code)
}
