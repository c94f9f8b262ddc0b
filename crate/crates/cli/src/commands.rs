use std::fmt::Display;
use std::time::Instant;

use bisector_core::bisect::{bisector, bisector_locus, bisector_through, is_q_pair, q_partner, BisectorsThrough};
use bisector_core::field::{FieldSpec, Scalar};
use bisector_core::form::QuadraticData;
use bisector_core::oracle::{sample_quadrilaterals, verify_many, Check, Profile};
use bisector_core::pencil::{Degenerations, Pencil};
use bisector_core::plane::{Line, Point};
use bisector_core::quad::{standard_form, Quadrilateral};

use crate::config::{CliError, Command, Format, JobConfig};
use crate::svg::{plot, View};

/// Lines for stdout, and whether a verification failed.
pub struct Output {
    format: Format,
    pub lines: Vec<String>,
    pub failed: bool,
}

impl Output {
    fn new(format: Format) -> Output {
        Output { format, lines: Vec::new(), failed: false }
    }

    fn kv(&mut self, key: &str, value: impl Display) {
        match self.format {
            Format::Record => self.lines.push(format!("{key}\t{value}")),
            _ => self.lines.push(format!("{key}: {value}")),
        }
    }

    fn raw(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }
}

fn invalid(e: impl ToString) -> CliError {
    CliError::Invalid(e.to_string())
}

fn coefficients(c: &[Scalar]) -> String {
    c.iter().map(Scalar::to_string).collect::<Vec<_>>().join(" ")
}

pub fn run(job: &JobConfig) -> Result<Output, CliError> {
    if job.format == Some(Format::Svg) && job.command != Command::Plot {
        return Err(invalid("FormatError: svg output is only for --cmd plot"));
    }
    let mut out = Output::new(job.format.unwrap_or(Format::Text));
    match job.command {
        Command::Analyze => analyze(job.quad()?, &mut out),
        Command::Bisector => {
            let q = job.quad()?;
            let m = Point::parse(q.field(), job.arg(0, "a point")?).map_err(invalid)?;
            bisectors_at(q, &m, &mut out);
        }
        Command::Partner => {
            let q = job.quad()?;
            let l = Line::parse(q.field(), job.arg(0, "a line")?).map_err(invalid)?;
            partner(q, &l, &mut out)?;
        }
        Command::Pencil => {
            let q = job.quad()?;
            let f = q.field();
            let alpha = f.parse_scalar(job.arg(0, "alpha")?).map_err(invalid)?;
            let beta = f.parse_scalar(job.arg(1, "beta")?).map_err(invalid)?;
            pencil(q, &alpha, &beta, &mut out)?;
        }
        Command::Verify => verify(job, &mut out)?,
        Command::Plot => {
            if matches!(job.format, Some(Format::Text | Format::Record)) {
                return Err(invalid("FormatError: plot writes svg"));
            }
            let view = View::parse(job.args.first().map_or("locus", String::as_str))?;
            let svg = plot(job.quad()?, view)?;
            match &job.out {
                Some(path) => {
                    std::fs::write(path, svg).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                    out.kv("wrote", path.display());
                }
                None => out.raw(svg.trim_end()),
            }
        }
    }
    Ok(out)
}

fn analyze(q: &Quadrilateral, out: &mut Output) {
    out.kv("field", q.field());
    out.kv("quad", q);
    out.kv("proper", q.is_proper());
    for (i, v) in q.vertices().iter().enumerate() {
        out.kv(&format!("vertex{}", i + 1), v);
    }
    if let Some(v) = q.double_vertex() {
        out.kv("double_vertex", v);
    }
    for (i, d) in q.diagonals().iter().enumerate() {
        out.kv(&format!("diagonal{}", i + 1), d);
    }
    for (i, p) in q.diagonal_points().iter().enumerate() {
        out.kv(&format!("diagonal_point{}", i + 1), p);
    }
    out.kv("centroid", q.centroid());
    let data = QuadraticData::of(q);
    out.kv("alpha", &data.alpha);
    out.kv("beta", &data.beta);
    out.kv("gamma", &data.gamma);
    out.kv("phi", &data);
    out.kv("discriminant", data.discriminant());
    let sf = standard_form(q);
    out.kv("mu", &sf.mu);
    out.kv("standard_map", &sf.map);
    out.kv("standard_quad", &sf.quad);
    let locus = bisector_locus(q);
    out.kv("locus", locus.render());
    out.kv("locus_polynomial", &locus.conic);
    out.kv("locus_coefficients", coefficients(locus.conic.coeffs()));
    out.kv("locus_degenerate", locus.is_degenerate());
    out.kv("locus_class", locus.conic.classify());
}

fn bisectors_at(q: &Quadrilateral, m: &Point, out: &mut Output) {
    out.kv("midpoint", m);
    match bisector_through(q, m) {
        BisectorsThrough::Empty => out.kv("bisector", "none"),
        BisectorsThrough::Unique(b) => out.kv("bisector", &b.line),
        BisectorsThrough::AllLinesThrough(c) => out.kv("bisector", format!("every line through {c}")),
    }
}

fn partner(q: &Quadrilateral, l: &Line, out: &mut Output) -> Result<(), CliError> {
    let p = q_partner(q, l).map_err(|e| CliError::Domain(e.to_string()))?;
    let mid = |l: &Line| bisector(q, l).expect("bisects").midpoint;
    out.kv("line", l);
    out.kv("midpoint", mid(l));
    out.kv("partner", &p);
    out.kv("partner_midpoint", mid(&p));
    Ok(())
}

fn pencil(q: &Quadrilateral, alpha: &Scalar, beta: &Scalar, out: &mut Output) -> Result<(), CliError> {
    let member = Pencil::of(q).member(alpha, beta).map_err(invalid)?;
    out.kv("member", &member);
    out.kv("coefficients", coefficients(member.coeffs()));
    out.kv("class", member.classify());
    match member.center() {
        Some(c) => out.kv("center", c),
        None => out.kv("center", "none"),
    }
    let f = q.field();
    let pairs = match member.degenerations() {
        Degenerations::None => {
            out.kv("degenerations", "none");
            vec![]
        }
        Degenerations::AbsentOverField { discriminant } => {
            out.kv("degenerations", format!("none over {f}; the asymptotes need a square root of {discriminant}"));
            vec![]
        }
        Degenerations::Asymptotes { lambda, pair } => {
            out.kv("lambda", lambda);
            vec![pair]
        }
        Degenerations::ParallelFamily(fam) => {
            out.kv("family_midline", fam.midline());
            out.kv("family_direction", fam.direction());
            fam.sample(&[f.zero(), f.one(), f.from_i64(2)])
        }
    };
    for pair in pairs {
        let q_pair = is_q_pair(q, &pair).unwrap_or(false);
        out.kv("degeneration", format!("{pair} (Q-pair: {q_pair})"));
    }
    Ok(())
}

fn worked_examples() -> Vec<Quadrilateral> {
    ["Y=0; Y=X+1; X=0; Y=2X-1", "Y=0; X=0; Y=1; X=1"]
        .iter()
        .map(|s| Quadrilateral::parse(FieldSpec::Rationals, s).expect("valid example"))
        .collect()
}

fn verify(job: &JobConfig, out: &mut Output) -> Result<(), CliError> {
    let finite = job.field.is_finite();
    let profile = job
        .profile
        .unwrap_or(if finite && job.quad.is_none() { Profile::Exhaustive } else { Profile::Fixture });
    let qs: Vec<Quadrilateral> = match &job.quad {
        Some(q) => vec![q.clone()],
        None => {
            let n = job.instances.unwrap_or(if finite { 50 } else { 10 });
            let mut qs = if finite { vec![] } else { worked_examples() };
            qs.extend(sample_quadrilaterals(job.field, job.seed, n).map_err(|e| CliError::Domain(e.to_string()))?);
            qs
        }
    };
    let checks: Vec<Check> = Check::ALL
        .into_iter()
        .filter(|&c| profile == Profile::Exhaustive || c != Check::BisectorFieldMaximal)
        .collect();
    let start = Instant::now();
    let reports = verify_many(&qs, profile, &checks, job.fault, job.seed).map_err(invalid)?;
    for r in &reports {
        out.raw(r.record());
        if out.format == Format::Text {
            for v in r.violations.iter().take(5) {
                out.raw(format!("    {v}"));
            }
        }
    }
    out.failed = reports.iter().any(|r| !r.passed());
    if out.format == Format::Text {
        out.kv("profile", profile);
        out.kv("elapsed", format!("{:.3}s", start.elapsed().as_secs_f64()));
    }
    out.kv("status", if out.failed { "fail" } else { "pass" });
    Ok(())
}
