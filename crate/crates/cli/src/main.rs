//! `whitney` — batch front end for the equisingularity checks.
//!
//! One job per invocation: parse the referenced germ/module/curve/
//! hyperplane files, run the requested check, and emit a report (text
//! narrative plus a machine-readable JSON block) to stdout or `--out`.
//! Exit codes: 0 the check ran (the verdict, whatever it is, is in the
//! report), 2 input error, 3 a theorem-contradiction sentinel fired.

mod inputs;

use clap::{Args, Parser, Subcommand};
use inputs::{read_input, write_atomic};
use std::path::PathBuf;
use whitney_core::curves::{limiting_secant, monomial_probes, CurveGerm, ProbeOptions};
use whitney_core::equising::{
    check_af_wf, check_whitney_w, icis_correspondence_scan, limiting_tangent_hyperplane,
    structure_blindness_check, w_generic_check, w_generic_sequence, FunctionCondition,
};
use whitney_core::formats::{
    parse_curves_file, parse_germ_file, parse_hyperplanes_file, parse_module_file,
    HyperplaneFile,
};
use whitney_core::groebner::{IdealSpec, SubmoduleSpec, Vect};
use whitney_core::ideal_ops::{ideal_intersection, ideal_product, radical_membership};
use whitney_core::jacobian::{
    grassmann_at_hyperplane, grassmann_modification, GermPresentation, GrassmannModification,
};
use whitney_core::local::{local_colength, ColengthValue};
use whitney_core::mult::{
    buchsbaum_rim, hilbert_samuel, icl_certify, is_reduction, MultOptions, MultiplicityResult,
};
use whitney_core::parse::parse_poly;
use whitney_core::poly::Poly;
use whitney_core::report::ReportNode;
use whitney_core::ring::PolyRing;
use whitney_core::scenarios;

#[derive(Parser)]
#[command(name = "whitney")]
#[command(about = "Exact equisingularity checks on polynomial germ files")]
#[command(version)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Largest truncation degree for local colength computations.
    #[arg(long, global = true)]
    truncation_cap: Option<u32>,
    /// Base series precision for curve probes.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Largest monomial exponent in generated probe curves.
    #[arg(long, global = true)]
    probe_exponent_bound: Option<u32>,
    /// Cap on the number of generated probe curves.
    #[arg(long, global = true)]
    probe_count: Option<usize>,
    /// Stabilization window for multiplicity finite differences.
    #[arg(long, global = true)]
    mult_window: Option<usize>,
    /// Seed for randomized sampling; always recorded in the report.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl GlobalOpts {
    fn mult_options(&self) -> MultOptions {
        let mut o = MultOptions::default();
        if let Some(c) = self.truncation_cap {
            o.truncation.cap = c;
        }
        if let Some(p) = self.precision {
            o.probe_precision = p;
        }
        if let Some(w) = self.mult_window {
            o.window = w;
        }
        if let Some(s) = self.seed {
            o.seed = s;
        }
        o
    }

    fn probe_options(&self) -> ProbeOptions {
        let mut o = ProbeOptions::default();
        if let Some(b) = self.probe_exponent_bound {
            o.exponent_bound = b;
        }
        if let Some(c) = self.probe_count {
            o.count = c;
        }
        if let Some(p) = self.precision {
            o.precision = p;
        }
        o
    }

    /// Every report records the effective options, so identical inputs and
    /// flags reproduce identical bytes.
    fn node(&self) -> ReportNode {
        let m = self.mult_options();
        let p = self.probe_options();
        let mut n = ReportNode::new("options");
        n.put("seed", m.seed.to_string());
        n.put("truncation-cap", m.truncation.cap.to_string());
        n.put("precision", m.probe_precision.to_string());
        n.put("mult-window", m.window.to_string());
        n.put("probe-count", p.count.to_string());
        n.put("probe-exponent-bound", p.exponent_bound.to_string());
        n
    }
}

#[derive(Subcommand)]
enum Command {
    /// Groebner basis of a module file.
    Gb { input: String },
    /// Is an element (components joined by '|') in the module?
    Member { input: String, element: String },
    /// Intersection of two ideals given as rank-1 module files.
    Intersect { a: String, b: String },
    /// Radical membership of a polynomial in a rank-1 module file.
    RadicalMember { input: String, element: String },
    /// Local colength of a module file.
    Colength { input: String },
    /// Hilbert-Samuel multiplicity of a rank-1 module file.
    Mult {
        input: String,
        /// Local dimension (default: arity minus relation count).
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Buchsbaum-Rim multiplicity of a module file.
    BrMult {
        input: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Is the first module a reduction of the second?
    IsReduction {
        sub: String,
        full: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Certify or refute integral dependence of an element on a module.
    Icl {
        input: String,
        element: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Probe curves file (default: generated monomial probes).
        #[arg(long)]
        curves: Option<String>,
    },
    /// Condition W for a family germ.
    WhitneyW {
        germ: String,
        #[arg(long)]
        curves: Option<String>,
    },
    /// Strict relative condition for the germ's F function.
    Af {
        germ: String,
        #[arg(long)]
        curves: Option<String>,
    },
    /// Strong relative condition for the germ's F function.
    Wf {
        germ: String,
        #[arg(long)]
        curves: Option<String>,
    },
    /// Compare the germ's two structures probe-by-probe (exit 3 on
    /// disagreement).
    Blindness {
        germ: String,
        #[arg(long)]
        curves: Option<String>,
    },
    /// Classify hyperplanes against a fiber germ.
    TangentHyperplane {
        germ: String,
        /// Hyperplanes file (default: the germ's own hyperplane lines).
        #[arg(long)]
        hyperplanes: Option<String>,
    },
    /// W-genericity of hyperplanes for a family germ.
    WGeneric {
        germ: String,
        #[arg(long)]
        hyperplanes: Option<String>,
    },
    /// Iterated section sequence: genericity plus condition-W re-checks.
    WGenericSeq {
        germ: String,
        #[arg(long)]
        hyperplanes: String,
        #[arg(long)]
        curves: Option<String>,
    },
    /// Fiberwise correspondence scan for an ICIS family (exit 3 on
    /// contradiction).
    IcisScan {
        germ: String,
        #[arg(long)]
        hyperplanes: Option<String>,
        #[arg(long)]
        curves: Option<String>,
    },
    /// Limiting secant directions of probe curves in a germ's z-block.
    Secant {
        germ: String,
        #[arg(long)]
        curves: String,
    },
    /// Grassmann modification of a family germ.
    Grassmann {
        germ: String,
        /// Chart variable (a z-block name; default: the last one).
        #[arg(long)]
        chart: Option<String>,
        /// Center the charts at one of the germ's hyperplanes (by label).
        #[arg(long)]
        hyperplane: Option<String>,
    },
    /// Reproduce the two-planes family scenario end to end.
    #[command(name = "example-1-1")]
    Example11,
}

fn main() {
    let cli = Cli::parse();
    let code = run(&cli);
    std::process::exit(code);
}

fn run(cli: &Cli) -> i32 {
    match dispatch(&cli.command, &cli.opts) {
        Ok((mut report, sentinel)) => {
            report.add_child(cli.opts.node());
            let text = emit(&report);
            if let Some(path) = &cli.opts.out {
                if let Err(e) = write_atomic(path, &text) {
                    eprintln!("error: {e}");
                    return 2;
                }
            } else {
                print!("{text}");
            }
            if sentinel {
                3
            } else {
                0
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn emit(report: &ReportNode) -> String {
    format!(
        "{}--- machine-readable ---\n{}",
        report.render_text(),
        report.render_json()
    )
}

// ---------------------------------------------------------------------------
// Input loading
// ---------------------------------------------------------------------------

fn load_germ(name: &str) -> Result<GermPresentation, String> {
    parse_germ_file(&read_input(name)?).map_err(|e| format!("{name}: {e}"))
}

fn load_module(name: &str) -> Result<SubmoduleSpec, String> {
    parse_module_file(&read_input(name)?).map_err(|e| format!("{name}: {e}"))
}

fn load_curves(name: &str, ring: &PolyRing) -> Result<Vec<CurveGerm>, String> {
    parse_curves_file(&read_input(name)?, ring).map_err(|e| format!("{name}: {e}"))
}

fn load_hyperplanes(name: &str, ring: &PolyRing) -> Result<HyperplaneFile, String> {
    let file = parse_hyperplanes_file(&read_input(name)?).map_err(|e| format!("{name}: {e}"))?;
    if &file.ring != ring {
        return Err(format!(
            "{name}: hyperplane variables {} do not match the germ's {}",
            file.ring, ring
        ));
    }
    Ok(file)
}

/// An element of a rank-r module: r polynomial components joined by '|'.
fn parse_element(module: &SubmoduleSpec, src: &str) -> Result<Vect, String> {
    let parts: Vec<&str> = src.split('|').collect();
    if parts.len() != module.rank {
        return Err(format!(
            "element has {} components, module has rank {}",
            parts.len(),
            module.rank
        ));
    }
    let comps = parts
        .iter()
        .map(|p| parse_poly(&module.ring, p))
        .collect::<Result<Vec<Poly>, _>>()
        .map_err(|e| format!("element: {e}"))?;
    Ok(Vect::new(comps))
}

fn ideal_of(module: &SubmoduleSpec, name: &str) -> Result<IdealSpec, String> {
    if module.rank != 1 {
        return Err(format!("{name}: expected a rank-1 module (an ideal)"));
    }
    let gens = module.gens.iter().map(|g| g.comp(0).clone()).collect();
    Ok(IdealSpec::new(module.ring.clone(), gens))
}

fn default_dim(module: &SubmoduleSpec) -> usize {
    module
        .ring
        .arity()
        .saturating_sub(module.relations.len())
}

/// Probes from `--curves`, or deterministic monomial probes on the variety
/// of `constraints` when none were supplied.
fn probes_for(
    curves: &Option<String>,
    ring: &PolyRing,
    constraints: &[Poly],
    opts: &GlobalOpts,
) -> Result<Vec<CurveGerm>, String> {
    match curves {
        Some(name) => load_curves(name, ring),
        None => Ok(monomial_probes(
            ring,
            &(0..ring.arity()).collect::<Vec<_>>(),
            constraints,
            &opts.probe_options(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Report pieces
// ---------------------------------------------------------------------------

fn colength_desc(v: &ColengthValue, ring: &PolyRing) -> String {
    match v {
        ColengthValue::Finite(n) => n.to_string(),
        ColengthValue::Infinite { position, var } => format!(
            "infinite (free variable {} at position {position})",
            ring.var_name(*var)
        ),
        ColengthValue::Undetermined { cap } => format!("undetermined at truncation cap {cap}"),
    }
}

fn samples_line(samples: &[(u32, u64)]) -> String {
    samples
        .iter()
        .map(|(n, c)| format!("{n}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn mult_node(label: &str, r: &MultiplicityResult) -> ReportNode {
    let mut n = ReportNode::new(label);
    n.put("e", r.e.to_string());
    n.put("method", &r.method);
    n.put("dim", r.dim.to_string());
    n.put("rank", r.rank.to_string());
    n.put("samples", samples_line(&r.samples));
    if let Some(cc) = &r.cross_check {
        let mut c = ReportNode::new("cross-check");
        c.put("method", &cc.method);
        c.put("e", cc.e.to_string());
        c.put("seed", cc.seed.to_string());
        c.put("attempts", cc.attempts.to_string());
        n.add_child(c);
    }
    n
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

fn dispatch(cmd: &Command, opts: &GlobalOpts) -> Result<(ReportNode, bool), String> {
    let mo = opts.mult_options();
    match cmd {
        Command::Gb { input } => {
            let module = load_module(input)?;
            let gb = module.groebner(false);
            let mut n = ReportNode::new(format!("groebner {input}"));
            n.put("rank", module.rank.to_string());
            n.put("elements", gb.elements().len().to_string());
            for (i, e) in gb.elements().iter().enumerate() {
                n.put(format!("g{i:03}"), e.to_string());
            }
            Ok((n, false))
        }

        Command::Member { input, element } => {
            let module = load_module(input)?;
            let h = parse_element(&module, element)?;
            let cert = module.membership(&h);
            let mut n = ReportNode::with_status(
                format!("member {element} in {input}"),
                if cert.member { "MEMBER" } else { "NOT-MEMBER" },
            );
            n.put("remainder", cert.remainder.to_string());
            Ok((n, false))
        }

        Command::Intersect { a, b } => {
            let ia = ideal_of(&load_module(a)?, a)?;
            let ib = ideal_of(&load_module(b)?, b)?;
            if ia.ring != ib.ring {
                return Err(format!("{a} and {b} use different variables"));
            }
            let meet = ideal_intersection(&ia, &ib);
            let mut n = ReportNode::new(format!("intersect {a} {b}"));
            n.put("generators", meet.gens.len().to_string());
            for (i, g) in meet.gens.iter().enumerate() {
                n.put(format!("g{i:03}"), g.to_string());
            }
            Ok((n, false))
        }

        Command::RadicalMember { input, element } => {
            let ideal = ideal_of(&load_module(input)?, input)?;
            let h = parse_poly(&ideal.ring, element).map_err(|e| format!("element: {e}"))?;
            let r = radical_membership(&ideal, &h);
            let mut n = ReportNode::with_status(
                format!("radical-member {element} in {input}"),
                if r.member { "MEMBER" } else { "NOT-MEMBER" },
            );
            n.put(
                "exponent",
                r.exponent
                    .map(|e| e.to_string())
                    .unwrap_or_else(|| "none".into()),
            );
            Ok((n, false))
        }

        Command::Colength { input } => {
            let module = load_module(input)?;
            let r = local_colength(&module, &mo.truncation);
            let mut n = ReportNode::new(format!("colength {input}"));
            n.put("value", colength_desc(&r.value, &module.ring));
            n.put(
                "nakayama-degree",
                r.nakayama_n
                    .map(|d| d.to_string())
                    .unwrap_or_else(|| "none".into()),
            );
            n.put("samples", samples_line(&r.samples));
            Ok((n, false))
        }

        Command::Mult { input, dim } => {
            let module = load_module(input)?;
            let ideal = ideal_of(&module, input)?;
            let d = dim.unwrap_or_else(|| default_dim(&module));
            let r = hilbert_samuel(&ideal.ring, &ideal.gens, &module.relations, d, &mo)
                .map_err(|e| format!("{input}: {e}"))?;
            Ok((mult_node(&format!("mult {input}"), &r), false))
        }

        Command::BrMult { input, dim } => {
            let module = load_module(input)?;
            let d = dim.unwrap_or_else(|| default_dim(&module));
            let r = buchsbaum_rim(&module, d, &mo).map_err(|e| format!("{input}: {e}"))?;
            Ok((mult_node(&format!("br-mult {input}"), &r), false))
        }

        Command::IsReduction { sub, full, dim } => {
            let s = load_module(sub)?;
            let f = load_module(full)?;
            let d = dim.unwrap_or_else(|| default_dim(&f));
            let v = is_reduction(&s, &f, d, &mo).map_err(|e| e.to_string())?;
            Ok((
                ReportNode::from_verdict(format!("is-reduction {sub} {full}"), &v),
                false,
            ))
        }

        Command::Icl {
            input,
            element,
            dim,
            curves,
        } => {
            let module = load_module(input)?;
            let h = parse_element(&module, element)?;
            let d = dim.unwrap_or_else(|| default_dim(&module));
            let probes = probes_for(curves, &module.ring, &module.relations, opts)?;
            let v = icl_certify(&h, &module, d, &mo, &probes).map_err(|e| e.to_string())?;
            Ok((
                ReportNode::from_verdict(format!("icl {element} in {input}"), &v),
                false,
            ))
        }

        Command::WhitneyW { germ, curves } => {
            let p = load_germ(germ)?;
            let probes = probes_for(curves, &p.ring, &p.components, opts)?;
            let v = check_whitney_w(&p, &probes, &mo).map_err(|e| e.to_string())?;
            Ok((
                ReportNode::from_verdict(format!("whitney-w {}", p.name), &v),
                false,
            ))
        }

        Command::Af { germ, curves } | Command::Wf { germ, curves } => {
            let mode = match cmd {
                Command::Af { .. } => FunctionCondition::AF,
                _ => FunctionCondition::WF,
            };
            let p = load_germ(germ)?;
            let probes = probes_for(curves, &p.ring, &p.components, opts)?;
            let v = check_af_wf(&p, &probes, mode, &mo).map_err(|e| e.to_string())?;
            let tag = match mode {
                FunctionCondition::AF => "af",
                FunctionCondition::WF => "wf",
            };
            Ok((
                ReportNode::from_verdict(format!("{tag} {}", p.name), &v),
                false,
            ))
        }

        Command::Blindness { germ, curves } => {
            let p = load_germ(germ)?;
            let probes = probes_for(curves, &p.ring, &p.components, opts)?;
            let out = structure_blindness_check(&p, &probes, &mo).map_err(|e| e.to_string())?;
            let sentinel = out.sentinel();
            Ok((out.report, sentinel))
        }

        Command::TangentHyperplane { germ, hyperplanes } => {
            let p = load_germ(germ)?;
            let hs = match hyperplanes {
                Some(f) => load_hyperplanes(f, &p.ring)?.hyperplanes,
                None => p.hyperplanes.clone(),
            };
            if hs.is_empty() {
                return Err(format!("{germ}: no hyperplanes given or bundled"));
            }
            let mut n = ReportNode::new(format!("tangent-hyperplane {}", p.name));
            for h in &hs {
                let (v, class) =
                    limiting_tangent_hyperplane(&p, h, &mo).map_err(|e| e.to_string())?;
                let mut c = ReportNode::from_verdict(format!("H {}", h.label), &v);
                c.put("class", class.label());
                n.add_child(c);
            }
            Ok((n, false))
        }

        Command::WGeneric { germ, hyperplanes } => {
            let p = load_germ(germ)?;
            let hs = match hyperplanes {
                Some(f) => load_hyperplanes(f, &p.ring)?.hyperplanes,
                None => p.hyperplanes.clone(),
            };
            if hs.is_empty() {
                return Err(format!("{germ}: no hyperplanes given or bundled"));
            }
            let mut n = ReportNode::new(format!("w-generic {}", p.name));
            for h in &hs {
                let v = w_generic_check(&p, h, &[], &mo).map_err(|e| e.to_string())?;
                n.add_child(ReportNode::from_verdict(format!("H {}", h.label), &v));
            }
            Ok((n, false))
        }

        Command::WGenericSeq {
            germ,
            hyperplanes,
            curves,
        } => {
            let p = load_germ(germ)?;
            let hs = load_hyperplanes(hyperplanes, &p.ring)?.hyperplanes;
            let probes = match curves {
                Some(f) => load_curves(f, &p.ring)?,
                None => Vec::new(),
            };
            let steps = w_generic_sequence(&p, &hs, &probes, &mo).map_err(|e| e.to_string())?;
            let mut n = ReportNode::new(format!("w-generic-seq {}", p.name));
            for (i, s) in steps.iter().enumerate() {
                let mut c = ReportNode::new(format!("step {} ({})", i + 1, s.hyperplane));
                c.add_child(ReportNode::from_verdict("generic", &s.generic));
                c.add_child(ReportNode::from_verdict(
                    "section-whitney",
                    &s.section_whitney,
                ));
                n.add_child(c);
            }
            Ok((n, false))
        }

        Command::IcisScan {
            germ,
            hyperplanes,
            curves,
        } => {
            let p = load_germ(germ)?;
            let hs = match hyperplanes {
                Some(f) => load_hyperplanes(f, &p.ring)?.hyperplanes,
                None => p.hyperplanes.clone(),
            };
            let probes = probes_for(curves, &p.ring, &p.components, opts)?;
            let out =
                icis_correspondence_scan(&p, &hs, &probes, &mo).map_err(|e| e.to_string())?;
            let sentinel = out.sentinel();
            Ok((out.report, sentinel))
        }

        Command::Secant { germ, curves } => {
            let p = load_germ(germ)?;
            let cs = load_curves(curves, &p.ring)?;
            let z_idx: Vec<usize> = p.z_vars().collect();
            let mut n = ReportNode::new(format!("secant {}", p.name));
            for c in &cs {
                let mut k = ReportNode::new(format!("curve {}", c.label));
                k.put("parametrization", c.display());
                match limiting_secant(c, &z_idx) {
                    Some(s) => {
                        k.put("order", s.order.to_string());
                        k.put(
                            "direction",
                            format!(
                                "({})",
                                s.direction
                                    .iter()
                                    .map(whitney_core::rational::render)
                                    .collect::<Vec<_>>()
                                    .join(", ")
                            ),
                        );
                    }
                    None => {
                        k.put("direction", "none (z-block image is zero)");
                    }
                }
                n.add_child(k);
            }
            Ok((n, false))
        }

        Command::Grassmann {
            germ,
            chart,
            hyperplane,
        } => {
            let p = load_germ(germ)?;
            match hyperplane {
                Some(label) => {
                    let h = p
                        .hyperplanes
                        .iter()
                        .find(|h| &h.label == label)
                        .ok_or_else(|| format!("{germ}: no hyperplane labeled {label:?}"))?;
                    let (gm, shifted) =
                        grassmann_at_hyperplane(&p, h).map_err(|e| e.to_string())?;
                    let mut n = grassmann_node(&p, &gm);
                    let mut s = ReportNode::new("shifted (a = 0 is H)");
                    s.put("hyperplane", &h.label);
                    for (i, f) in shifted.components.iter().enumerate() {
                        s.put(format!("G{i:03}"), f.to_string());
                    }
                    n.add_child(s);
                    Ok((n, false))
                }
                None => {
                    let idx = match chart {
                        Some(name) => {
                            let v = p.ring.var_index(name).ok_or_else(|| {
                                format!("{germ}: unknown variable {name:?}")
                            })?;
                            if v < p.y_len {
                                return Err(format!(
                                    "{germ}: {name:?} is a parameter, not a z variable"
                                ));
                            }
                            v - p.y_len
                        }
                        None => p.n() - 1,
                    };
                    let gm = grassmann_modification(&p, idx).map_err(|e| e.to_string())?;
                    Ok((grassmann_node(&p, &gm), false))
                }
            }
        }

        Command::Example11 => Ok(example_1_1_report()),
    }
}

fn grassmann_node(p: &GermPresentation, gm: &GrassmannModification) -> ReportNode {
    let mut n = ReportNode::new(format!("grassmann {}", p.name));
    n.put("chart", p.ring.var_name(p.y_len + gm.chart));
    n.put("ring", gm.presentation.ring.to_string());
    n.put("parameter-block", gm.presentation.y_len.to_string());
    for (i, f) in gm.presentation.components.iter().enumerate() {
        n.put(format!("G{i:03}"), f.to_string());
    }
    let mut b = ReportNode::new("substitution");
    for (i, img) in gm.beta.iter().enumerate() {
        b.put(p.ring.var_name(i), img.to_string());
    }
    n.add_child(b);
    n
}

/// The two-planes family: the section element lies in the intersection of
/// the plane ideals but not in their product, where it is nilpotent of
/// exponent 2; the fiber of the product structure at the origin is the
/// expected monomial ideal.
fn example_1_1_report() -> (ReportNode, bool) {
    let (i1, i2, h) = scenarios::example_1_1_section_ideals();
    let meet = ideal_intersection(&i1, &i2);
    let prod = ideal_product(&i1, &i2);
    let in_meet = meet.membership(&h).member;
    let in_prod = prod.membership(&h).member;
    let rad = radical_membership(&prod, &h);

    let family = scenarios::example_1_1_family();
    let t = 0usize; // the parameter is the first variable
    let fiber: Vec<String> = family
        .components
        .iter()
        .map(|f| {
            f.specialize(&[(t, whitney_core::rational::qi(0))])
                .to_string()
        })
        .collect();

    let reproduced = in_meet
        && !in_prod
        && rad.member
        && rad.exponent == Some(2)
        && fiber == ["x*w", "x*z", "y*w", "y*z"];

    let mut n = ReportNode::with_status(
        "example-1-1",
        if reproduced { "REPRODUCED" } else { "MISMATCH" },
    );
    n.put("element", h.to_string());
    n.put(
        "in-intersection",
        if in_meet { "member" } else { "NOT a member" },
    );
    n.put(
        "in-product",
        if in_prod { "member" } else { "NOT a member" },
    );
    n.put(
        "nilpotent-exponent",
        rad.exponent
            .map(|e| e.to_string())
            .unwrap_or_else(|| "none".into()),
    );
    n.put("fiber-at-0", fiber.join(", "));
    (n, false)
}
