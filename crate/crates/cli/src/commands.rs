use std::collections::BTreeMap;
use std::path::Path;

use gridsight_core::construct::{build_lower_bound_config, scaling_experiment, ScalingOptions};
use gridsight_core::cover::{primitive_chain_cover, toy_chain_cover, CoverReport};
use gridsight_core::fourier::fourier_suite;
use gridsight_core::geometry::{
    visible_2d_exact, visible_sampled, Configuration, SampleOptions, Segment, PLANE_LIMIT,
};
use gridsight_core::lattice::{antichain_from_lattice, lll_reduce, IntegerLattice};
use gridsight_core::modular::{check_height_duality, mean_height, Sample};
use gridsight_core::poset::{build_s_poset, width_bruteforce, width_exact, BRUTEFORCE_LIMIT};
use gridsight_core::verify::verify_all;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{Command, Format, RunConfig};
use crate::error::CliError;

/// Bumped whenever an output shape changes; schemas live in docs/schemas.
const SCHEMA_VERSION: u32 = 1;

fn tagged(name: &str, body: impl Serialize) -> Result<Value, CliError> {
    let mut v = serde_json::to_value(body)?;
    if let Value::Object(m) = &mut v {
        m.insert(
            "schema".into(),
            json!(format!("gridsight/{name}/v{SCHEMA_VERSION}")),
        );
    }
    Ok(v)
}

fn write_text(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(cfg: &RunConfig, v: &Value) -> Result<(), CliError> {
    if cfg.format == Some(Format::Csv) {
        return Err(CliError::Usage("this command only writes JSON".into()));
    }
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    write_text(cfg.out.as_deref(), &text)
}

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<(), CliError> {
    match cmd {
        Command::Hp => hp(cfg),
        Command::Width => width(cfg),
        Command::Antichain => antichain(cfg),
        Command::Lll => lll(cfg),
        Command::Cover => cover(cfg),
        Command::FourierCheck => fourier(cfg),
        Command::Simulate => simulate(cfg),
        Command::Construct => construct(cfg),
        Command::Scaling => scaling(cfg),
        Command::VerifyAll => verify(cfg),
    }
}

fn hp(cfg: &RunConfig) -> Result<(), CliError> {
    let v = if cfg.t.is_some() {
        let r = check_height_duality(&cfg.residue()?);
        let holds = r.holds;
        let v = tagged("hp", r)?;
        if !holds {
            emit_json(cfg, &v)?;
            return Err(CliError::Failed("height-duality".into()));
        }
        v
    } else {
        tagged("hp-mean", mean_height(cfg.prime()?, cfg.d, Sample::All)?)?
    };
    emit_json(cfg, &v)
}

fn width(cfg: &RunConfig) -> Result<(), CliError> {
    let t = cfg.residue()?;
    let signs = cfg.signs_or_plus(t.coords().len());
    let poset = build_s_poset(&t, &signs)?;
    let w = width_exact(&poset)?;
    let ks = |idx: &[usize]| poset.k_indices(idx);
    let bruteforce = if poset.len() <= BRUTEFORCE_LIMIT {
        Some(width_bruteforce(&poset)?)
    } else {
        None
    };
    if bruteforce.is_some_and(|b| b != w.width) {
        return Err(CliError::Failed("width-oracle".into()));
    }
    let mut antichain = ks(&w.antichain.members);
    antichain.sort_unstable();
    let chains: Vec<Vec<u64>> = w.cover.chains.iter().map(|c| ks(c)).collect();
    let v = tagged(
        "width",
        json!({
            "p": t.p(),
            "d": t.d(),
            "t": t.coords(),
            "signs": signs,
            "size": poset.len(),
            "width": w.width,
            "antichain": antichain,
            "chains": chains,
            "bruteforce": bruteforce,
        }),
    )?;
    emit_json(cfg, &v)
}

fn antichain(cfg: &RunConfig) -> Result<(), CliError> {
    let t = cfg.residue()?;
    let a = antichain_from_lattice(&t)?;
    let member_width = width_exact(&build_s_poset(&t, &a.signs)?)?.width;
    let mut v = tagged("antichain", &a)?;
    v["p"] = json!(t.p());
    v["t"] = json!(t.coords());
    v["size"] = json!(a.len());
    v["member_width"] = json!(member_width);
    emit_json(cfg, &v)
}

fn lll(cfg: &RunConfig) -> Result<(), CliError> {
    let t = cfg.residue()?;
    let lattice = IntegerLattice::parallelotope(&t);
    let reduced = lll_reduce(&lattice)?;
    let v = tagged(
        "lll",
        json!({
            "p": t.p(),
            "d": t.d(),
            "t": t.coords(),
            "basis": lattice.basis(),
            "reduced": reduced.vectors,
            "covolume": lattice.covolume().to_string(),
            "norm_product_sq": reduced.norm_product_sq().to_string(),
        }),
    )?;
    emit_json(cfg, &v)
}

fn cover_json(r: &CoverReport) -> Value {
    let chains: Vec<Vec<u64>> = r
        .cover
        .chains
        .iter()
        .map(|c| r.poset.k_indices(c))
        .collect();
    json!({
        "kind": r.kind,
        "chains": chains,
        "count": r.len(),
        "bound": r.bound,
        "generator": r.generator,
        "cuts": r.cuts,
        "cut_budget": r.cut_budget,
    })
}

fn cover(cfg: &RunConfig) -> Result<(), CliError> {
    let t = cfg.residue()?;
    let toy = toy_chain_cover(&t)?;
    // the additive cover needs every t_i >= 2
    let primitive = if t.coords().iter().all(|&c| c >= 2) {
        Some(cover_json(&primitive_chain_cover(&t)?))
    } else {
        None
    };
    let v = tagged(
        "cover",
        json!({
            "p": t.p(),
            "d": t.d(),
            "t": t.coords(),
            "toy": cover_json(&toy),
            "primitive": primitive,
        }),
    )?;
    emit_json(cfg, &v)
}

fn fourier(cfg: &RunConfig) -> Result<(), CliError> {
    let r = fourier_suite(&cfg.residue()?, cfg.seed)?;
    let holds = r.holds;
    emit_json(cfg, &tagged("fourier-check", r)?)?;
    if holds {
        Ok(())
    } else {
        Err(CliError::Failed("fourier-identities".into()))
    }
}

/// Either a bare configuration or the output of `construct`.
#[derive(Deserialize)]
#[serde(untagged)]
enum SceneInput {
    Built {
        configuration: Configuration,
        #[serde(default)]
        sightlines: Vec<Segment>,
    },
    Bare(Configuration),
}

fn simulate(cfg: &RunConfig) -> Result<(), CliError> {
    let path = cfg
        .input
        .as_deref()
        .ok_or_else(|| CliError::Usage("--input is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let (scene, sightlines) = match serde_json::from_str::<SceneInput>(&text)? {
        SceneInput::Built {
            configuration,
            sightlines,
        } => (configuration, sightlines),
        SceneInput::Bare(c) => (c, Vec::new()),
    };
    // a sightline ends on a face shared by up to two cubes; offer it to each
    let mut hints: BTreeMap<Vec<i64>, Vec<Segment>> = BTreeMap::new();
    for s in &sightlines {
        for c in scene.cubes() {
            if s.end_in_closed_cube(c, false) {
                hints.entry(c.clone()).or_default().push(s.clone());
            }
        }
    }
    let opts = SampleOptions {
        rays_per_cube: cfg.rays,
        seed: cfg.seed,
        theta: cfg.theta,
        hints,
    };
    let sampled = visible_sampled(&scene, &opts)?;
    let exact = if scene.d() == 2 && scene.n() <= PLANE_LIMIT && cfg.theta.is_none() {
        Some(visible_2d_exact(&scene)?)
    } else {
        None
    };
    let v = tagged(
        "simulate",
        json!({
            "n": scene.n(),
            "d": scene.d(),
            "cubes": scene.len(),
            "rays": cfg.rays,
            "seed": cfg.seed,
            "theta": cfg.theta,
            "sampled": sampled,
            "sampled_count": sampled.len(),
            "exact": exact,
            "exact_count": exact.as_ref().map(Vec::len),
        }),
    )?;
    emit_json(cfg, &v)
}

fn construct(cfg: &RunConfig) -> Result<(), CliError> {
    let built = build_lower_bound_config(
        cfg.prime()?,
        cfg.d,
        gridsight_core::construct::DEFAULT_SPACING,
    )?;
    let sightlines: Vec<&Segment> = built.hints.values().flatten().collect();
    let mut v = tagged("construct", &built)?;
    v["sightlines"] = serde_json::to_value(sightlines)?;
    emit_json(cfg, &v)
}

fn scaling(cfg: &RunConfig) -> Result<(), CliError> {
    let opts = ScalingOptions {
        mode: cfg.mode,
        rays_per_cube: cfg.rays,
        seed: cfg.seed,
    };
    let report = scaling_experiment(&cfg.primes, cfg.d, &opts)?;
    if let Some(out) = &cfg.out {
        let svg = out.with_extension("svg");
        std::fs::write(&svg, report.to_svg()).map_err(|e| CliError::io(&svg, e))?;
    }
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => write_text(cfg.out.as_deref(), &report.to_csv()?),
        Format::Json => emit_json(cfg, &tagged("scaling", &report)?),
    }
}

fn verify(cfg: &RunConfig) -> Result<(), CliError> {
    let report = verify_all(cfg.max_p)?;
    match cfg.format {
        Some(Format::Json) => emit_json(cfg, &tagged("verify-all", &report)?)?,
        _ => write_text(cfg.out.as_deref(), &report.table())?,
    }
    let failed: Vec<&str> = report
        .rows
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.tag)
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failed.join(", ")))
    }
}
