use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "umbra",
    version,
    about = "Bell polynomials, Blissard reciprocals and generalized Laplace transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partial Bell polynomials B_{n,k}(g), or complete Y_n(f; g) with --f
    Bell(BellArgs),
    /// Reciprocal sequence b_n and coefficients C_n of an umbral sequence
    Blissard(BlissardArgs),
    /// Kernel values 1/E(st) over an (s, t) grid, or a decay probe
    Kernel(KernelArgs),
    /// Generalized Laplace transform of f(t) over a grid of s
    Transform(TransformArgs),
    /// Experimental Bromwich-type inversion with an e_r kernel
    Invert(InvertArgs),
    /// Coefficient isomorphisms on formal power series
    Iso(IsoArgs),
    /// Exact-arithmetic identity suite
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct BellArgs {
    /// Largest n
    #[arg(long)]
    pub n: usize,
    /// g_1,g_2,... as integers or p/q fractions
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    /// f_1,f_2,...; switches to complete Bell polynomials
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub output: Format,
}

#[derive(Debug, Args)]
pub struct BlissardArgs {
    /// ones, laguerre:r, factorial, inv-succ, or a_0,a_1,... with a_0 = 1
    #[arg(long, allow_hyphen_values = true)]
    pub sequence: String,
    #[arg(long)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t)]
    pub output: Format,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("family").required(true).args(["sequence", "laguerre", "geometric"])))]
pub struct KernelChoice {
    /// Reciprocal-EGF kernel of an umbral sequence
    #[arg(long, allow_hyphen_values = true)]
    pub sequence: Option<String>,
    /// Laguerre-type kernel 1/e_r(st)
    #[arg(long)]
    pub laguerre: Option<u32>,
    /// Truncated geometric kernel 1/(1 + x + ... + x^n)
    #[arg(long, conflicts_with = "truncate")]
    pub geometric: Option<usize>,
    /// Keep the denominator terms of degree <= n only
    #[arg(long)]
    pub truncate: Option<usize>,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    #[arg(long, env = "UMBRA_ABS_TOL")]
    pub abs_tol: Option<f64>,
    #[arg(long, env = "UMBRA_REL_TOL")]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub tail_eps: Option<f64>,
    #[arg(long)]
    pub max_interval: Option<f64>,
    #[arg(long)]
    pub max_subdivisions: Option<usize>,
    /// Integrate over [0, L] only
    #[arg(long)]
    pub finite_interval: Option<f64>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub kernel: KernelChoice,
    /// Values of s: a,b,c or start:end:count
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    /// Values of t: a,b,c or start:end:count
    #[arg(long, required_unless_present = "probe", allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Run the decay probe on (0, T] instead of tabulating
    #[arg(long, value_name = "T")]
    pub probe: Option<f64>,
    #[arg(long, default_value_t = 24)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t)]
    pub output: Format,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// f(t), e.g. "exp(-t)*sin(t)"
    #[arg(long, allow_hyphen_values = true)]
    pub function: String,
    #[command(flatten)]
    pub kernel: KernelChoice,
    /// Values of s: a,b,c or start:end:count
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[arg(long, value_enum, default_value_t)]
    pub output: Format,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["image", "function"])))]
pub struct InvertArgs {
    /// Image F(s) as an expression in s
    #[arg(long, allow_hyphen_values = true)]
    pub image: Option<String>,
    /// f(t); its image is computed numerically under the same kernel
    #[arg(long, allow_hyphen_values = true)]
    pub function: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub laguerre: u32,
    /// Values of t: a,b,c or start:end:count
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    /// Abscissa of the vertical contour
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[arg(long, value_enum, default_value_t)]
    pub output: Format,
}

#[derive(Debug, Args)]
pub struct IsoArgs {
    /// exp, e_r:R, or plain coefficients c_0,c_1,...
    #[arg(long, allow_hyphen_values = true, required_unless_present = "gap")]
    pub series: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Use s^n -> a_n s^n for this sequence instead of the m-th iterate
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["reciprocal", "gap"])]
    pub general: Option<String>,
    /// Emit the reciprocal of the image
    #[arg(long)]
    pub reciprocal: bool,
    /// Compare the coefficient-wise and multiplicative readings on e^{-x}
    #[arg(long, conflicts_with_all = ["series", "reciprocal"])]
    pub gap: bool,
    #[arg(long)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t)]
    pub output: Format,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value_t)]
    pub output: Format,
}
