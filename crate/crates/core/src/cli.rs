//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and renders one document in the requested format.
//!
//! Exit codes: 0 on success, 1 on a domain error (the error name is echoed
//! on stderr) or a failed self-check, 2 on a usage error.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::cmpair::{build_cm_pair, verify_rank_one, CMPair};
use crate::error::Result;
use crate::exactalg::{BiPoly, IntMatrix};
use crate::partition::Partition;
use crate::spectral::{annihilators, orthogonality_check};
use crate::xhp::{bispectral_check, generating_series, tau, xhp_cmpair, xhp_wronskian};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Latex,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Wronskian,
    Cmpair,
    Both,
}

#[derive(Debug, Parser)]
#[command(
    name = "cmxhp",
    version,
    about = "Exceptional Hermite polynomials from Calogero-Moser pairs"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Combinatorial data of a partition
    Partition { spec: String },
    /// The CM pair (X, Z, a, b) of a partition
    Cmpair {
        spec: String,
        /// Check that [X, Z] - I = b a
        #[arg(long)]
        verify: bool,
    },
    /// One exceptional Hermite polynomial
    Poly {
        spec: String,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Cmpair)]
        method: Method,
    },
    /// The tau function from the Wronskian and from det X̃
    Tau { spec: String },
    /// Generating series in z up to (excluding) the given power
    Series {
        spec: String,
        #[arg(long)]
        order: usize,
    },
    /// Symmetry of the stationary wave function under (X, Z) -> (Zᵀ, Xᵀ)
    Bispectral { spec: String },
    /// Annihilating functionals at a fixed y
    Annihilators {
        spec: String,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Highest degree tested (default N + 14)
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Gram matrix of the family by quadrature
    Ortho {
        spec: String,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long)]
        nmax: usize,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A rendered document plus an optional failed self-check.
struct Doc {
    text: String,
    latex: String,
    json: Value,
    failure: Option<String>,
}

impl Doc {
    fn new(text: String, latex: String, json: Value) -> Self {
        Doc {
            text,
            latex,
            json,
            failure: None,
        }
    }
}

/// Runs the front end on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion => Output {
                    code: 0,
                    stdout: e.render().to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let msg = e.render().to_string();
                    let line = msg
                        .lines()
                        .find(|l| !l.trim().is_empty())
                        .unwrap_or("usage error");
                    Output {
                        code: 2,
                        stdout: String::new(),
                        stderr: format!("{line}\n"),
                    }
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(doc) => {
            let body = match cli.format {
                OutputFormat::Text => doc.text,
                OutputFormat::Latex => doc.latex,
                OutputFormat::Json => serde_json::to_string_pretty(&doc.json).expect("json"),
            };
            let (code, stderr) = match doc.failure {
                Some(f) => (1, format!("{f}\n")),
                None => (0, String::new()),
            };
            Output {
                code,
                stdout: format!("{}\n", body.trim_end()),
                stderr,
            }
        }
        Err(e) => Output {
            code: 1,
            stdout: String::new(),
            stderr: format!("{}: {e}\n", e.name()),
        },
    }
}

fn dispatch(cmd: &Command) -> Result<Doc> {
    match cmd {
        Command::Partition { spec } => partition_doc(&spec.parse()?),
        Command::Cmpair { spec, verify } => cmpair_doc(&spec.parse()?, *verify),
        Command::Poly { spec, n, method } => poly_doc(&spec.parse()?, *n, *method),
        Command::Tau { spec } => tau_doc(&spec.parse()?),
        Command::Series { spec, order } => series_doc(&spec.parse()?, *order),
        Command::Bispectral { spec } => bispectral_doc(&spec.parse()?),
        Command::Annihilators { spec, y, tol, nmax } => {
            let p: Partition = spec.parse()?;
            let nmax = nmax.unwrap_or(p.weight() + 14);
            annihilators_doc(&p, *y, *tol, nmax)
        }
        Command::Ortho { spec, y, nmax } => ortho_doc(&spec.parse()?, *y, *nmax),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn parts_latex(p: &Partition) -> String {
    if p.is_empty() {
        "\\emptyset".into()
    } else {
        format!("({p})")
    }
}

fn partition_doc(p: &Partition) -> Result<Doc> {
    let l = p.len();
    let maya = p.maya_diagram(l + 3);
    let k = p.index_set_k();
    let kn = p.excluded_degrees();
    let degrees = p.degree_set(p.weight() + 10);
    let frob = p.frobenius();
    let even = p.is_even();
    let text = format!(
        "partition  {p}\nweight     {}\nlength     {l}\nmaya       {}, ...\nK          {{{}}}\nK_N        {{{}}}\nI          {}, ...\nfrobenius  {frob}\neven       {}",
        p.weight(),
        join(&maya),
        join(&k),
        join(&kn),
        join(&degrees),
        if even { "yes" } else { "no" },
    );
    let latex = format!(
        "\\lambda = {}, \\quad N = {}, \\quad \\ell = {l} \\\\\n\
         m_i(\\lambda) = {}, \\dots \\\\\n\
         K^{{(\\lambda)}} = \\{{{}\\}}, \\quad K_N^{{(\\lambda)}} = \\{{{}\\}} \\\\\n\
         I^{{(\\lambda)}} = \\{{{}, \\dots\\}} \\\\\n\
         \\lambda = {frob}",
        parts_latex(p),
        p.weight(),
        join(&maya),
        join(&k),
        join(&kn),
        join(&degrees),
    );
    let json = json!({
        "partition": p.parts(),
        "weight": p.weight(),
        "length": l,
        "maya_prefix": maya,
        "k": k,
        "k_n": kn,
        "degrees_prefix": degrees,
        "frobenius": { "arms": frob.arms, "legs": frob.legs },
        "even": even,
    });
    Ok(Doc::new(text, latex, json))
}

fn matrix_text(m: &IntMatrix) -> String {
    let width = m
        .entries()
        .iter()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    (0..m.rows())
        .map(|i| {
            let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            format!("  [{}]", row.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn matrix_latex(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| join(m.row(i)).replace(", ", " & "))
        .collect();
    format!(
        "\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}",
        rows.join(" \\\\\n")
    )
}

fn matrix_json(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

fn cmpair_doc(p: &Partition, verify: bool) -> Result<Doc> {
    let c: CMPair = build_cm_pair(p)?;
    let rank_one = verify.then(|| verify_rank_one(&c));
    let mut text = format!(
        "partition {p}  (blocks {})\nX =\n{}\nZ =\n{}\na = [{}]\nb^T = [{}]",
        join(&c.block_sizes),
        matrix_text(&c.x),
        matrix_text(&c.z),
        join(&c.a),
        join(&c.b),
    );
    let mut latex = format!(
        "X = {}, \\quad\nZ = {}, \\\\\na = ({}), \\quad b^{{\\top}} = ({})",
        matrix_latex(&c.x),
        matrix_latex(&c.z),
        join(&c.a),
        join(&c.b),
    );
    let mut json = json!({
        "partition": p.parts(),
        "block_sizes": c.block_sizes,
        "x": matrix_json(&c.x),
        "z": matrix_json(&c.z),
        "a": c.a,
        "b": c.b,
    });
    if let Some(ok) = rank_one {
        text.push_str(&format!(
            "\nrank-one: {}",
            if ok { "verified" } else { "FAILED" }
        ));
        latex.push_str(&format!(
            "\n% rank-one: {}",
            if ok { "verified" } else { "FAILED" }
        ));
        json["rank_one"] = json!(ok);
    }
    let mut doc = Doc::new(text, latex, json);
    if rank_one == Some(false) {
        doc.failure = Some("rank-one check failed".into());
    }
    Ok(doc)
}

fn poly_name_latex(p: &Partition, n: usize) -> String {
    if p.is_empty() {
        format!("H_{{{n}}}(x,y)")
    } else {
        format!("H_{{{n}}}^{{({p})}}(x,y)")
    }
}

fn poly_doc(p: &Partition, n: usize, method: Method) -> Result<Doc> {
    let (poly, agree) = match method {
        Method::Wronskian => (xhp_wronskian(p, n)?, None),
        Method::Cmpair => (xhp_cmpair(p, n)?, None),
        Method::Both => {
            let w = xhp_wronskian(p, n)?;
            let c = xhp_cmpair(p, n)?;
            let same = w == c;
            (c, Some(same))
        }
    };
    let method_name = match method {
        Method::Wronskian => "wronskian",
        Method::Cmpair => "cmpair",
        Method::Both => "both",
    };
    let mut text = format!("H_{n}^({p}) = {poly}");
    let mut latex = format!("{} = {}", poly_name_latex(p, n), poly.to_latex());
    let mut json = json!({
        "partition": p.parts(),
        "n": n,
        "method": method_name,
        "poly": poly.to_json(),
    });
    if let Some(same) = agree {
        let note = if same {
            "methods agree"
        } else {
            "methods DISAGREE"
        };
        text.push_str(&format!("\n{note}"));
        latex.push_str(&format!("\n% {note}"));
        json["agree"] = json!(same);
    }
    let mut doc = Doc::new(text, latex, json);
    if agree == Some(false) {
        doc.failure = Some("wronskian and cmpair polynomials differ".into());
    }
    Ok(doc)
}

fn tau_doc(p: &Partition) -> Result<Doc> {
    let (wr, det) = tau(p)?;
    let same = wr == det;
    let text = format!(
        "tau (wronskian) = {wr}\ntau (det X~)    = {det}\n{}",
        if same { "agree" } else { "DISAGREE" }
    );
    let latex = format!("\\tau^{{{}}}(x,y) = {}", parts_latex(p), det.to_latex());
    let json = json!({
        "partition": p.parts(),
        "wronskian": wr.to_json(),
        "det": det.to_json(),
        "agree": same,
    });
    let mut doc = Doc::new(text, latex, json);
    if !same {
        doc.failure = Some("tau formulas differ".into());
    }
    Ok(doc)
}

fn series_doc(p: &Partition, order: usize) -> Result<Doc> {
    let s = generating_series(p, order)?;
    let coeffs: Vec<(usize, BiPoly)> = (0..order)
        .map(|k| (k, s.coeff(k as i64).expect("below order")))
        .collect();
    let text = coeffs
        .iter()
        .map(|(k, c)| format!("z^{k}: {c}"))
        .collect::<Vec<_>>()
        .join("\n");
    let terms: Vec<String> = coeffs
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => format!("\\left({}\\right)", c.to_latex()),
            1 => format!("\\left({}\\right) z", c.to_latex()),
            _ => format!("\\left({}\\right) z^{{{k}}}", c.to_latex()),
        })
        .collect();
    let latex = format!(
        "{} + O(z^{{{order}}})",
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    );
    let json = json!({
        "partition": p.parts(),
        "order": order,
        "coeffs": coeffs.iter().map(|(k, c)| json!({"power": k, "poly": c.to_json()})).collect::<Vec<_>>(),
    });
    Ok(Doc::new(text, latex, json))
}

fn bispectral_doc(p: &Partition) -> Result<Doc> {
    let ok = bispectral_check(&build_cm_pair(p)?)?;
    let word = if ok { "holds" } else { "FAILS" };
    let mut doc = Doc::new(
        format!("bispectral symmetry for {p}: {word}"),
        format!("% bispectral symmetry for {}: {word}", parts_latex(p)),
        json!({ "partition": p.parts(), "symmetric": ok }),
    );
    if !ok {
        doc.failure = Some("bispectral check failed".into());
    }
    Ok(doc)
}

fn complex_json(c: Complex64) -> Value {
    json!({ "re": c.re, "im": c.im })
}

fn complex_text(c: Complex64) -> String {
    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.12} {sign} {:.12}i", c.re, c.im.abs())
}

fn annihilators_doc(p: &Partition, y: f64, tol: f64, nmax: usize) -> Result<Doc> {
    let set = annihilators(p, y, tol, nmax)?;
    let mut text = format!("partition {p}, y = {y}, degrees n <= {nmax}\n");
    let mut latex = String::new();
    for (i, (g, t)) in set.gammas.iter().zip(&set.thetas).enumerate() {
        text.push_str(&format!(
            "gamma_{} = {}\n  c1 = {}\n  c0 = {}\n  residual = {:.3e}\n",
            i + 1,
            complex_text(*g),
            complex_text(t.coeff(1)),
            complex_text(t.coeff(0)),
            set.residual_report[i],
        ));
        latex.push_str(&format!(
            "\\theta_{{{}}} = ({})\\,\\Delta^1_{{{}}} + ({})\\,\\Delta^0_{{{}}} \\\\\n",
            i + 1,
            complex_text(t.coeff(1)),
            complex_text(*g),
            complex_text(t.coeff(0)),
            complex_text(*g),
        ));
    }
    let json = json!({
        "partition": p.parts(),
        "y": y,
        "gammas": set.gammas.iter().map(|&g| complex_json(g)).collect::<Vec<_>>(),
        "thetas": set.thetas.iter().map(|t| json!({
            "point": complex_json(t.atoms[0].point),
            "c1": complex_json(t.coeff(1)),
            "c0": complex_json(t.coeff(0)),
        })).collect::<Vec<_>>(),
        "residuals": set.residual_report,
        "degrees": set.degrees,
    });
    Ok(Doc::new(text, latex, json))
}

fn ortho_doc(p: &Partition, y: f64, nmax: usize) -> Result<Doc> {
    let r = orthogonality_check(p, y, nmax)?;
    let mut text = format!(
        "partition {p}, y = {y}, degrees {{{}}}\nmax off-diagonal (relative) = {:.3e}\n",
        join(&r.degrees),
        r.max_offdiag_rel
    );
    for (i, n) in r.degrees.iter().enumerate() {
        text.push_str(&format!(
            "n = {n:>3}  <H_n,H_n> = {:.12e}  nu = {:.12e}  ratio = {:.12}\n",
            r.gram[i][i], r.nu[i], r.nu_ratio[i]
        ));
    }
    let rows: Vec<String> = r
        .gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| format!("{v:.6e}"))
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    let latex = format!(
        "G = \\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}",
        rows.join(" \\\\\n")
    );
    let json = json!({
        "partition": p.parts(),
        "y": y,
        "degrees": r.degrees,
        "gram": r.gram,
        "max_offdiag_rel": r.max_offdiag_rel,
        "nu": r.nu,
        "nu_ratio": r.nu_ratio,
        "half_width": r.half_width,
    });
    Ok(Doc::new(text, latex, json))
}
