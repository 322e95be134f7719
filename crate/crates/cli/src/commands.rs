use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use canform::exact::{format_rat, parse_rat};
use canform::forms::{self, CanonicalForm, CheckReport, Method, ResidueChart, Witness};
use canform::io;
use canform::polytope::{dual_cone, polar_at};
use canform::pushforward::{self, PushforwardReport};
use canform::{Error, LinForm, Polytope, Rat};
use serde_json::{json, Value};

use crate::{read, Failure, MethodArg, Output};

fn load(path: &Path) -> Result<Polytope, Failure> {
    let text = read(path)?;
    let parsed = io::parse_polytope(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    if !parsed.dropped.is_empty() {
        let list: Vec<String> = parsed.dropped.iter().map(usize::to_string).collect();
        eprintln!(
            "warning: {}: dropped non-vertex point(s) at vertices[{}]",
            path.display(),
            list.join(", ")
        );
    }
    Ok(parsed.polytope)
}

fn done(pretty: String, json: Value) -> Output {
    Output {
        pretty,
        json,
        passed: true,
    }
}

fn report_output(reports: &[CheckReport]) -> Output {
    let mut pretty = String::new();
    for r in reports {
        render_report(&mut pretty, r);
    }
    let json = match reports {
        [one] => serde_json::to_value(one),
        many => serde_json::to_value(many),
    }
    .expect("reports serialize");
    Output {
        pretty,
        json,
        passed: reports.iter().all(|r| r.passed),
    }
}

fn render_report(out: &mut String, r: &CheckReport) {
    let bad = r.mismatches().count();
    let status = if r.passed { "passed" } else { "FAILED" };
    let _ = writeln!(out, "{}: {status} ({} witnesses, {bad} mismatches)", r.name, r.witnesses.len());
    for w in &r.witnesses {
        let tag = if w.mismatch { "MISMATCH" } else { "ok" };
        let _ = writeln!(out, "  {tag} {}: {}", w.at, w.detail);
    }
}

pub fn canon(input: &Path, method: MethodArg) -> Result<Output, Failure> {
    let p = load(input)?;
    let single = |m: Method| -> Result<Output, Failure> {
        let f = m.canon(&p)?;
        Ok(done(format!("{}\n", f.format()), io::form_to_json(&f)))
    };
    match method {
        MethodArg::Triangulation => single(Method::Triangulation),
        MethodArg::Dualvol => single(Method::DualVolume),
        MethodArg::Laplace => single(Method::DualCone),
        MethodArg::All => {
            let forms = Method::ALL
                .iter()
                .map(|m| Ok((*m, m.canon(&p)?)))
                .collect::<Result<Vec<(Method, CanonicalForm)>, Failure>>()?;
            let first = &forms[0].1;
            let agree = forms.iter().all(|(_, f)| f == first);
            let names: Vec<&str> = forms.iter().map(|(m, _)| m.name()).collect();
            if agree {
                eprintln!("note: {} agree", names.join(", "));
                Ok(done(format!("{}\n", first.format()), io::form_to_json(first)))
            } else {
                let mut pretty = String::new();
                let mut witnesses = Vec::new();
                for (m, f) in &forms {
                    let _ = writeln!(pretty, "{}: {}", m.name(), f.format());
                    witnesses.push(Witness {
                        mismatch: f != first,
                        at: m.name().into(),
                        detail: json!(f.format()),
                    });
                }
                let report = CheckReport::new("method agreement", witnesses);
                Ok(Output {
                    pretty,
                    json: serde_json::to_value(report).expect("serializable"),
                    passed: false,
                })
            }
        }
    }
}

fn chart_text(names: &[String], c: &ResidueChart) -> String {
    let kept: Vec<String> = c.kept.iter().map(|&i| names[i].clone()).collect();
    let rhs = LinForm::new(c.solved[0].clone(), c.solved[1..].to_vec())
        .map(|l| l.format(&kept))
        .unwrap_or_else(|_| "0".into());
    format!("{} = {rhs}", names[c.pivot])
}

pub fn residue(input: &Path, facet: usize) -> Result<Output, Failure> {
    let p = load(input)?;
    let Some(hyperplane) = p.facets().get(facet) else {
        return Err(Failure(format!(
            "--facet: index {facet} out of range, the polytope has {} facets",
            p.num_facets()
        )));
    };
    let f = forms::canon_triangulation(&p)?;
    let r = forms::residue(&f, hyperplane)?;
    let pretty = format!(
        "{}\nfacet {facet}: {} = 0\nchart: {}\n",
        r.form.format(),
        hyperplane.format(f.varnames()),
        chart_text(f.varnames(), &r.chart)
    );
    Ok(done(
        pretty,
        json!({
            "facet": facet,
            "hyperplane": hyperplane.format(f.varnames()),
            "form": io::form_to_json(&r.form),
            "chart": r.chart,
        }),
    ))
}

pub fn adjoint(input: &Path) -> Result<Output, Failure> {
    let p = load(input)?;
    let f = forms::canon_triangulation(&p)?;
    let h = forms::homogenize(&f)?;
    let names = &h.varnames;
    let adj = h.numerator().format(names);
    let affine = f.numerator().format(f.varnames());
    let pretty = format!(
        "adjoint: {adj}\naffine numerator: {affine}\nhomogenized form: {}\ndegree: {}\n",
        h.format(),
        h.degree
    );
    Ok(done(
        pretty,
        json!({"adjoint": adj, "affine_numerator": affine, "homogenized": h.format(), "degree": h.degree}),
    ))
}

pub fn residual(input: &Path) -> Result<Output, Failure> {
    let p = load(input)?;
    let flats = forms::residual_arrangement(&p)?;
    let interp = forms::residual_interpolation(&p)?;
    let mut pretty = String::new();
    for fl in &flats {
        match fl.point() {
            Some(pt) => {
                let coords: Vec<String> = pt.iter().map(format_rat).collect();
                let _ = writeln!(pretty, "point ({}) on facets {:?}", coords.join(", "), fl.facets);
            }
            None => {
                let _ = writeln!(pretty, "flat of dimension {} on facets {:?}", fl.dim(), fl.facets);
            }
        }
    }
    let _ = writeln!(
        pretty,
        "interpolation: degree {}, {} unknowns, nullity {}",
        interp.degree, interp.unknowns, interp.nullity
    );
    Ok(done(
        pretty,
        json!({
            "flats": flats.iter().map(|f| f.describe()).collect::<Vec<_>>(),
            "interpolation": {"degree": interp.degree, "unknowns": interp.unknowns, "nullity": interp.nullity},
        }),
    ))
}

fn parse_point(text: &str, d: usize) -> Result<Vec<Rat>, Failure> {
    let coords = text
        .split(',')
        .enumerate()
        .map(|(k, s)| parse_rat(s).map_err(|e| Failure(format!("--at[{k}]: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != d {
        return Err(Failure(format!("--at: expected {d} coordinates, found {}", coords.len())));
    }
    Ok(coords)
}

pub fn polar(input: &Path, at: Option<&str>) -> Result<Output, Failure> {
    let p = load(input)?;
    let x = match at {
        Some(s) => parse_point(s, p.dim())?,
        None => p.centroid().to_vec(),
    };
    let q = polar_at(&p, &x)?;
    let mut pretty = String::new();
    let _ = writeln!(pretty, "polar at ({}):", io::rat_strings(&x).join(", "));
    for v in q.vertices() {
        let _ = writeln!(pretty, "  ({})", io::rat_strings(v).join(", "));
    }
    let _ = writeln!(pretty, "volume: {}", format_rat(&q.normalized_volume()));
    Ok(done(pretty, io::polytope_to_json(&q)))
}

pub fn dualvol(input: &Path) -> Result<Output, Failure> {
    let p = load(input)?;
    let f = forms::canon_triangulation(&p)?;
    let names = f.varnames();
    let terms = forms::dual_volume_terms(&p)?;
    let mut pretty = String::new();
    let mut rows = Vec::new();
    for t in &terms {
        let func = t.func(p.facets())?;
        let text = func.format(names);
        let _ = writeln!(pretty, "vertex {} facets {:?}: {text}", t.vertex, t.facets);
        rows.push(json!({"vertex": t.vertex, "facets": t.facets, "coeff": format_rat(&t.coeff), "term": text}));
    }
    let sum = forms::canon_dual_volume(&p)?;
    let _ = writeln!(pretty, "sum: {}", sum.format());
    Ok(done(pretty, json!({"terms": rows, "sum": io::form_to_json(&sum)})))
}

pub fn laplace(input: &Path) -> Result<Output, Failure> {
    let p = load(input)?;
    let terms = forms::laplace_terms(&dual_cone(&p))?;
    let names: Vec<String> = (0..=p.dim()).map(|i| format!("X{i}")).collect();
    let mut pretty = String::new();
    let mut rows = Vec::new();
    for t in &terms {
        let text = t.homogeneous()?.format(&names);
        let rays: Vec<Vec<String>> = t.rays.iter().map(|r| io::rat_strings(r)).collect();
        let _ = writeln!(pretty, "|det| {}: {text}", format_rat(&t.abs_det));
        rows.push(json!({"rays": rays, "abs_det": format_rat(&t.abs_det), "term": text}));
    }
    let sum = forms::canon_dual_cone(&p)?;
    let _ = writeln!(pretty, "sum at X0=1: {}", sum.format());
    Ok(done(pretty, json!({"terms": rows, "sum": io::form_to_json(&sum)})))
}

pub fn mixedvol(inputs: &[PathBuf]) -> Result<Output, Failure> {
    let summands = inputs
        .iter()
        .map(|path| {
            io::parse_point_set(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let v = forms::dual_mixed_volume(&summands)?;
    let report = forms::mixed_homogeneity_check(&v)?;
    let mut pretty = format!("{}\n", v.format());
    render_report(&mut pretty, &report);
    Ok(Output {
        pretty,
        json: json!({"volume": v.format(), "vars": v.varnames, "homogeneity": report}),
        passed: report.passed,
    })
}

pub fn check_recursion(input: &Path) -> Result<Output, Failure> {
    let p = load(input)?;
    Ok(report_output(&[forms::recursion_verify(&p)?]))
}

pub fn check_subdivision(parent: &Path, parts: &[PathBuf]) -> Result<Output, Failure> {
    let p = load(parent)?;
    let pieces = parts.iter().map(|q| load(q)).collect::<Result<Vec<_>, _>>()?;
    let report = match forms::subdivision_verify(&p, &pieces) {
        Err(Error::NotSubdivision(why)) => {
            CheckReport::new("subdivision", vec![Witness::mismatch("parts", json!({"error": why}))])
        }
        other => other?,
    };
    Ok(report_output(&[report]))
}

pub fn check_filliman(input: &Path) -> Result<Output, Failure> {
    let p = load(input)?;
    Ok(report_output(&[forms::filliman_check(&p)?]))
}

pub fn check_convexity(input: &Path, samples: usize, seed: u64) -> Result<Output, Failure> {
    let p = load(input)?;
    Ok(report_output(&[forms::positive_convexity_check(&p, samples, seed)?]))
}

pub fn check_pushforward(
    input: &Path,
    samples: Option<usize>,
    tol: Option<f64>,
    seed: u64,
) -> Result<Output, Failure> {
    let text = read(input)?;
    let spec = io::parse_pushforward_input(&text).map_err(|e| Failure(format!("{}: {e}", input.display())))?;
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure("--tol: must be a positive number".into()));
        }
    }
    let samples = samples.or(spec.samples).unwrap_or(10);
    let tol = tol.or(spec.tol).unwrap_or(pushforward::DEFAULT_TOL);
    let map = match pushforward::build_map(&spec.w, &spec.v) {
        Err(e @ Error::OrientedMatroidMismatch { .. }) => {
            let report = CheckReport::new("pushforward", vec![Witness::mismatch("W/V", json!({"error": e.to_string()}))]);
            return Ok(report_output(&[report]));
        }
        other => other?,
    };
    let target = map.target_polytope()?;
    let reports: Vec<PushforwardReport> = pushforward::pushforward_check(&map, &target, samples, tol, seed)?;
    let summary = pushforward::summarize(&reports, map.expected_degree()?);
    let mut pretty = String::new();
    for (k, r) in reports.iter().enumerate() {
        let _ = writeln!(
            pretty,
            "sample {k} ({}): {} preimages, lhs {:.12e}{:+.3e}i, rhs {:.12e}, rel err {:.3e} {}",
            io::rat_strings(&r.sample).join(", "),
            r.degree_found,
            r.lhs[0],
            r.lhs[1],
            r.rhs,
            r.rel_err,
            if r.passed { "ok" } else { "MISMATCH" }
        );
    }
    render_report(&mut pretty, &summary);
    Ok(Output {
        pretty,
        json: serde_json::to_value(&reports).expect("reports serialize"),
        passed: summary.passed,
    })
}
