use alia_core::alia::*;
use alia_core::export::*;
use alia_core::intertwiner::{build_modaut, cross_validate, ExplicitGenerators};
use alia_core::par::{self, Exec};
use alia_core::polyhedral::*;
use alia_core::rootsystem::*;
use alia_core::AliaError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "alia", version, about = "Automorphic Lie algebras for binary polyhedral groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group data: orbits, ν, d, orders and abelianisations.
    Groups(Job),
    /// The periodic map n(k) over a range of even k.
    Nmap(Job),
    /// Ground forms with their characters.
    Groundforms(Job),
    /// Invariant generators p_k with poles on the chosen orbit.
    Pk(Job),
    /// Dimensions of invariant forms against the closed-form series.
    Molien(Job),
    /// The sl2 intertwiner and, for A1..A4, the images of the root vectors.
    Intertwine(Job),
    /// Structure constants of the algebra.
    Structure(Job),
    /// The normal-form integral ω¹ as a matrix.
    Normalform(Job),
    /// Root graphs of the cocycle components, in DOT.
    Graph(Job),
    /// Jacobi identity, character checks and intertwiner equivariance.
    Verify(Job),
    /// Fixed-point dimensions, abelianisation and isomorphism key.
    Dims(Job),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Latex,
    Dot,
    Text,
}

#[derive(Args)]
struct Job {
    /// C<n>, D<n>, T, O or Y.
    #[arg(long)]
    group: Option<GroupKind>,
    /// smallest, largest, or a 1-based orbit index.
    #[arg(long, default_value = "smallest")]
    orbit: OrbitSel,
    /// Lie type such as A2, G2 or E7.
    #[arg(long = "type")]
    lie_type: Option<LieType>,
    /// Dynkin labels, comma separated; principal when omitted.
    #[arg(long)]
    labels: Option<DynkinGrading>,
    /// Range `a..b` of k, both ends included.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<KRange>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    /// List positive roots only; on by default for E7 and E8.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    positive_only: Option<bool>,
    /// Use the printed residue convention for even cyclic groups.
    #[arg(long)]
    tabulated: bool,
}

#[derive(Clone, Copy)]
struct KRange(i64, i64);

impl std::str::FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<KRange, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
        let a = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
        let b = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
        if a > b {
            return Err(format!("empty range {s:?}"));
        }
        Ok(KRange(a, b))
    }
}

enum Failure {
    Usage(String),
    Verification(String),
    Library(AliaError),
}

impl From<AliaError> for Failure {
    fn from(e: AliaError) -> Failure {
        match e {
            AliaError::Verification(m) => Failure::Verification(m),
            AliaError::Parse(m) | AliaError::Domain(m) => Failure::Usage(m),
            e => Failure::Library(e),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(Failure::Usage(msg.into()))
}

/// Output of a job, and whether everything it checked held.
struct Report {
    body: String,
    ok: bool,
}

impl Report {
    fn ok(body: String) -> Res<Report> {
        Ok(Report { body, ok: true })
    }
}

impl Job {
    fn group(&self) -> Res<GroupKind> {
        self.group.ok_or_else(|| Failure::Usage("--group is required".into()))
    }

    fn model(&self) -> Res<GroupModel> {
        Ok(GroupModel::build(self.group()?)?)
    }

    fn lie_type(&self) -> Res<LieType> {
        self.lie_type.ok_or_else(|| Failure::Usage("--type is required".into()))
    }

    fn grading(&self) -> Res<DynkinGrading> {
        let t = self.lie_type()?;
        Ok(self.labels.clone().unwrap_or_else(|| DynkinGrading::principal(t.rank)))
    }

    fn alia(&self) -> Res<Alia> {
        let mut spec = AliaSpec::new(self.group()?, self.orbit, self.lie_type()?, self.grading()?)?;
        if self.tabulated {
            spec = spec.with_convention(NConvention::Tabulated);
        }
        Ok(Alia::new(spec)?)
    }

    fn format(&self, allowed: &[Format]) -> Res<Format> {
        let f = self.format.unwrap_or(allowed[0]);
        if !allowed.contains(&f) {
            return usage(format!("--format {} does not apply to this command", f.to_possible_value().unwrap().get_name()));
        }
        Ok(f)
    }

    fn k_range(&self, default: KRange) -> KRange {
        self.k.unwrap_or(default)
    }
}

fn json<T: Serialize>(v: &T) -> Res<String> {
    Ok(to_json(v)?)
}

fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| if f.contains([',', '"']) { format!("\"{}\"", f.replace('"', "\"\"")) } else { f.clone() })
        .collect();
    quoted.join(",") + "\n"
}

#[derive(Serialize)]
struct GroupRow {
    group: String,
    orbits: usize,
    nu: Vec<u32>,
    lcm_nu: u32,
    d: Vec<u32>,
    gcd_d: u32,
    order_gamma: u32,
    order_binary: usize,
    abelianization: Abelianization,
    binary_abelianization: Abelianization,
    counting_identity: bool,
}

fn groups(job: &Job) -> Res<Report> {
    let kinds = match job.group {
        Some(g) => vec![g],
        None => group_grid(12),
    };
    let rows: Vec<(GroupRow, GroupJson)> = kinds
        .iter()
        .map(|&k| {
            let m = GroupModel::build(k)?;
            let (ga, ba) = m.abelianizations();
            let row = GroupRow {
                group: k.to_string(),
                orbits: m.num_orbits(),
                nu: m.nu.clone(),
                lcm_nu: m.lcm_nu,
                d: m.d.clone(),
                gcd_d: m.gcd_d,
                order_gamma: m.order_gamma,
                order_binary: m.order_binary(),
                abelianization: ga,
                binary_abelianization: ba,
                counting_identity: m.check_counting(),
            };
            Ok((row, m.to_json()))
        })
        .collect::<Result<_, AliaError>>()?;
    let ok = rows.iter().all(|(r, _)| r.counting_identity && r.order_binary == 2 * r.order_gamma as usize);
    let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let ab = |a: &Abelianization| format!("{}/{}", a.order, a.exponent);
    let body = match job.format(&[Format::Text, Format::Csv, Format::Json])? {
        Format::Json => {
            #[derive(Serialize)]
            struct Entry<'a> {
                #[serde(flatten)]
                row: &'a GroupRow,
                model: &'a GroupJson,
            }
            json(&rows.iter().map(|(row, model)| Entry { row, model }).collect::<Vec<_>>())?
        }
        Format::Csv => {
            let mut s = csv_line(&["group", "orbits", "nu", "lcm_nu", "d", "gcd_d", "order_gamma", "order_binary", "ab_order", "ab_exponent", "binary_ab_order", "binary_ab_exponent"].map(String::from));
            for (r, _) in &rows {
                s += &csv_line(&[
                    r.group.clone(),
                    r.orbits.to_string(),
                    list(&r.nu),
                    r.lcm_nu.to_string(),
                    list(&r.d),
                    r.gcd_d.to_string(),
                    r.order_gamma.to_string(),
                    r.order_binary.to_string(),
                    r.abelianization.order.to_string(),
                    r.abelianization.exponent.to_string(),
                    r.binary_abelianization.order.to_string(),
                    r.binary_abelianization.exponent.to_string(),
                ]);
            }
            s
        }
        _ => {
            let mut grid = vec![["group", "|Ω|", "ν_i", "ν", "d_i", "d", "|Γ|", "|BΓ|", "Γab", "BΓab"].map(String::from).to_vec()];
            for (r, _) in &rows {
                grid.push(vec![
                    r.group.clone(),
                    r.orbits.to_string(),
                    format!("({})", list(&r.nu)),
                    r.lcm_nu.to_string(),
                    format!("({})", list(&r.d)),
                    r.gcd_d.to_string(),
                    r.order_gamma.to_string(),
                    r.order_binary.to_string(),
                    ab(&r.abelianization),
                    ab(&r.binary_abelianization),
                ]);
            }
            string_grid(&grid)
        }
    };
    Ok(Report { body, ok })
}

fn even_ks(r: KRange) -> impl Iterator<Item = i64> {
    (r.0..=r.1).rev().filter(|k| k % 2 == 0)
}

fn nmap(job: &Job) -> Res<Report> {
    let m = job.model()?;
    let span = 2 * m.lcm_nu as i64;
    let mut rows = Vec::new();
    for k in even_ks(job.k_range(KRange(-span, span))) {
        let v = if job.tabulated { m.n_map_tabulated(k)? } else { m.n_map(k)? };
        rows.push((k, v));
    }
    let body = match job.format(&[Format::Text, Format::Csv, Format::Json])? {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                k: i64,
                residues: Vec<i64>,
            }
            #[derive(Serialize)]
            struct NTable {
                group: String,
                nu: Vec<u32>,
                halved: bool,
                rows: Vec<Row>,
            }
            json(&NTable {
                group: m.kind.to_string(),
                nu: m.nu.clone(),
                halved: rows.first().is_some_and(|r| r.1.halved),
                rows: rows.iter().map(|(k, v)| Row { k: *k, residues: v.residues.clone() }).collect(),
            })?
        }
        Format::Csv => {
            let mut head = vec!["k".to_string()];
            head.extend((1..=m.num_orbits()).map(|i| format!("n{i}")));
            let mut s = csv_line(&head);
            for (k, v) in &rows {
                let mut line = vec![k.to_string()];
                line.extend(v.residues.iter().map(i64::to_string));
                s += &csv_line(&line);
            }
            s
        }
        _ => {
            let mut grid = vec![vec!["k".to_string(), m.kind.to_string()]];
            grid.extend(rows.iter().map(|(k, v)| vec![k.to_string(), v.to_string()]));
            string_grid(&grid)
        }
    };
    Report::ok(body)
}

fn groundforms(job: &Job) -> Res<Report> {
    let m = job.model()?;
    let forms = m.ground_forms()?;
    let chis: Vec<Vec<String>> = forms.iter().map(|f| f.character.iter().map(|c| c.to_string()).collect()).collect();
    let body = match job.format(&[Format::Text, Format::Json, Format::Latex])? {
        Format::Json => {
            #[derive(Serialize)]
            struct Entry {
                orbit: usize,
                degree: u32,
                form: alia_core::bipoly::FormJson,
                text: String,
                character: Vec<String>,
            }
            json(&forms
                .iter()
                .zip(&chis)
                .map(|(f, c)| Entry {
                    orbit: f.orbit + 1,
                    degree: f.form.degree().unwrap_or(0),
                    form: f.form.to_json(),
                    text: f.form.pretty(),
                    character: c.clone(),
                })
                .collect::<Vec<_>>())?
        }
        Format::Latex => {
            let mut s = String::new();
            for (f, glyph) in forms.iter().zip(GLYPHS) {
                let _ = writeln!(s, "P_{glyph} &= {} \\\\", f.form.pretty());
            }
            s
        }
        _ => {
            let mut s = String::new();
            for (f, c) in forms.iter().zip(&chis) {
                let _ = writeln!(s, "P{} (degree {}, character [{}]): {}", f.orbit + 1, f.form.degree().unwrap_or(0), c.join(", "), f.form.pretty());
            }
            s
        }
    };
    Report::ok(body)
}

fn pk(job: &Job) -> Res<Report> {
    let m = job.model()?;
    let j = m.orbit_index(job.orbit)?;
    let span = 2 * m.lcm_nu as i64;
    let mut rows = Vec::new();
    let mut ok = true;
    for k in even_ks(job.k_range(KRange(-span, span))) {
        let p = m.p_k(j, k)?;
        ok &= m.p_k_character(j, k)?.iter().all(|c| c == &alia_core::exactnum::CycNum::one(m.kind.working_order()));
        rows.push((k, p.pretty()));
    }
    let body = match job.format(&[Format::Text, Format::Json])? {
        Format::Json => json(&rows)?,
        _ => rows.iter().map(|(k, p)| format!("p_{k} = {p}\n")).collect(),
    };
    Ok(Report { body, ok })
}

fn molien(job: &Job) -> Res<Report> {
    let m = job.model()?;
    let r = job.k_range(KRange(0, 60));
    if r.0 < 0 {
        return usage("degrees must be nonnegative");
    }
    let kmax = r.1 as usize;
    let dims = m.molien_dims(kmax, Exec::default())?;
    let series = kostant_series(m.kind, kmax);
    let rows: Vec<(usize, u64, i64)> = (r.0 as usize..=kmax).map(|k| (k, dims[k], series[k])).collect();
    let ok = rows.iter().all(|(_, a, b)| *a as i64 == *b);
    let body = match job.format(&[Format::Text, Format::Csv, Format::Json])? {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = csv_line(&["k", "molien", "closed_form"].map(String::from));
            for (k, a, b) in &rows {
                s += &csv_line(&[k.to_string(), a.to_string(), b.to_string()]);
            }
            s
        }
        _ => {
            let mut grid = vec![["k", "molien", "closed form"].map(String::from).to_vec()];
            grid.extend(rows.iter().map(|(k, a, b)| vec![k.to_string(), a.to_string(), b.to_string()]));
            string_grid(&grid)
        }
    };
    Ok(Report { body, ok })
}

fn intertwine(job: &Job) -> Res<Report> {
    let m = job.model()?;
    let j = m.orbit_index(job.orbit)?;
    let it = build_modaut(m.ground_form(j), &m.generators)?;
    let mut ok = it.report.all_ok();
    let mut images: Vec<(String, Vec<Vec<String>>)> = vec![("M".into(), matrix_strings(&it.matrix))];
    if let Some(t) = job.lie_type {
        if t.family != Family::A || t.rank > 4 {
            return usage("explicit generators are available for A1 to A4");
        }
        let g = ExplicitGenerators::new(&m, j, t.rank as u32, Exec::default())?;
        for (i, x) in g.root_vectors.iter().enumerate() {
            images.push((format!("a[{}]", g.sys.coords_text(i)), matrix_strings(&g.modaut_of(x))));
        }
        if t.rank <= 3 {
            ok &= cross_validate(&m, j, t.rank as u32, Exec::default())?.ok();
        }
    }
    let body = match job.format(&[Format::Text, Format::Json])? {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                pole: String,
                report: &'a alia_core::intertwiner::ModautReport,
                matrices: &'a [(String, Vec<Vec<String>>)],
            }
            json(&Out { pole: it.pole.pretty(), report: &it.report, matrices: &images })?
        }
        _ => {
            let mut s = format!("pole: {}\n{:?}\n", it.pole.pretty(), it.report);
            for (name, rows) in &images {
                let _ = writeln!(s, "{name}:");
                for r in rows {
                    let _ = writeln!(s, "[ {} ]", r.join(" ; "));
                }
            }
            s
        }
    };
    Ok(Report { body, ok })
}

fn structure(job: &Job) -> Res<Report> {
    let a = job.alia()?;
    let t = a.spec.lie_type;
    let positive_only = job.positive_only.unwrap_or(t.family == Family::E && t.rank >= 7);
    let table = root_table(&a, positive_only);
    let body = match job.format(&[Format::Text, Format::Csv, Format::Json, Format::Latex])? {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json()?,
        Format::Latex => table.to_latex(),
        _ => table.to_text(),
    };
    Report::ok(body)
}

fn normalform(job: &Job) -> Res<Report> {
    let a = job.alia()?;
    let nf = normal_form_integral(&a.sys, &a.omega)?;
    let matrix = normal_form_matrix(&a.sys, &nf)?;
    let body = match job.format(&[Format::Text, Format::Json])? {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                roots: &'a [Vec<i64>],
                normal_form: &'a alia_core::rootsystem::NormalForm,
                matrix: &'a [Vec<String>],
            }
            json(&Out { roots: &a.sys.roots, normal_form: &nf, matrix: &matrix })?
        }
        _ => string_grid(&matrix),
    };
    Report::ok(body)
}

fn graph(job: &Job) -> Res<Report> {
    job.format(&[Format::Dot])?;
    let a = job.alia()?;
    let mut body = String::new();
    for c in a.omega_star() {
        body += &graph_dot(&rank2_graph(&a, c)?);
    }
    Report::ok(body)
}

#[derive(Serialize)]
struct Check {
    name: String,
    ok: bool,
    detail: String,
}

fn verify(job: &Job) -> Res<Report> {
    let m = job.model()?;
    let mut checks = Vec::new();
    let mut push = |name: &str, ok: bool, detail: String| checks.push(Check { name: name.into(), ok, detail });
    let chars = m.character_checks()?;
    for item in chars.items {
        push(&item.name, item.ok, item.detail);
    }
    push("counting identity", m.check_counting(), String::new());
    let j = m.orbit_index(job.orbit)?;
    match build_modaut(m.ground_form(j), &m.generators) {
        Ok(it) => push("intertwiner", it.report.all_ok(), format!("{:?}", it.report)),
        Err(e) => push("intertwiner", false, e.to_string()),
    }
    if job.lie_type.is_some() {
        let a = job.alia()?;
        push("Chevalley constants", a.eps.check(&a.sys).is_ok(), String::new());
        push("cocycle identities", a.omega.check_identities(&a.sys).is_ok(), String::new());
        let jac = jacobi_check(&a.bracket_table(), Exec::default());
        push("Jacobi identity", jac.ok(), format!("{jac:?}"));
    }
    let ok = checks.iter().all(|c| c.ok);
    let body = match job.format(&[Format::Text, Format::Json])? {
        Format::Json => json(&checks)?,
        _ => checks
            .iter()
            .map(|c| {
                let tail = if c.ok || c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) };
                format!("{} {}{tail}\n", if c.ok { "ok  " } else { "FAIL" }, c.name)
            })
            .collect(),
    };
    Ok(Report { body, ok })
}

fn dims(job: &Job) -> Res<Report> {
    let a = job.alia()?;
    #[derive(Serialize)]
    struct Out {
        fixed_points: Option<FixedPointDims>,
        abelianisation: usize,
        isomorphism_key: Vec<u64>,
    }
    let even = a.spec.grading.is_even_on(&a.sys);
    let fixed_points = if even { Some(fixed_point_dims(&a.model, a.spec.lie_type, &a.spec.grading)?) } else { None };
    let out = Out { fixed_points, abelianisation: abelianisation_dim(&a)?, isomorphism_key: isomorphism_key(&a) };
    let body = match job.format(&[Format::Text, Format::Json])? {
        Format::Json => json(&out)?,
        _ => {
            let mut s = String::new();
            match &out.fixed_points {
                Some(f) => {
                    let parts: Vec<String> = f.per_orbit.iter().map(u64::to_string).collect();
                    let _ = writeln!(s, "fixed points: {} = {}; dim g = {}; invariants {}", parts.join(" + "), f.sum(), f.dim_g, f.invariant);
                }
                None => s.push_str("fixed points: grading is not even\n"),
            }
            let key: Vec<String> = out.isomorphism_key.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "abelianisation: {}", out.abelianisation);
            let _ = writeln!(s, "isomorphism key: {{{}}}", key.join(","));
            s
        }
    };
    Report::ok(body)
}

fn run(cli: &Cli) -> Res<Report> {
    match &cli.command {
        Command::Groups(j) => groups(j),
        Command::Nmap(j) => nmap(j),
        Command::Groundforms(j) => groundforms(j),
        Command::Pk(j) => pk(j),
        Command::Molien(j) => molien(j),
        Command::Intertwine(j) => intertwine(j),
        Command::Structure(j) => structure(j),
        Command::Normalform(j) => normalform(j),
        Command::Graph(j) => graph(j),
        Command::Verify(j) => verify(j),
        Command::Dims(j) => dims(j),
    }
}

fn job(cli: &Cli) -> &Job {
    match &cli.command {
        Command::Groups(j)
        | Command::Nmap(j)
        | Command::Groundforms(j)
        | Command::Pk(j)
        | Command::Molien(j)
        | Command::Intertwine(j)
        | Command::Structure(j)
        | Command::Normalform(j)
        | Command::Graph(j)
        | Command::Verify(j)
        | Command::Dims(j) => j,
    }
}

fn threads() -> Res<()> {
    let Ok(v) = std::env::var("ALIA_THREADS") else { return Ok(()) };
    match v.trim().parse::<usize>() {
        Ok(n) if n >= 1 => {
            par::set_threads(n);
            Ok(())
        }
        _ => usage(format!("ALIA_THREADS must be a positive integer, got {v:?}")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = threads().and_then(|_| run(&cli)).and_then(|r| {
        match &job(&cli).output {
            Some(path) => std::fs::write(path, &r.body).map_err(|e| Failure::Library(AliaError::Internal(format!("{}: {e}", path.display()))))?,
            None => print!("{}", r.body),
        }
        Ok(r.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("alia: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("alia: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("alia: verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Library(e)) => {
            eprintln!("alia: {e}");
            ExitCode::from(1)
        }
    }
}
