use clap::Args;
use gaussmix::thresholds::sep_threshold_ns;
use gaussmix::{
    effective_nc, nonclassical_depth, p_classical, BeamSplitter, MeasureReport, SingleModeState,
};
use serde_json::{json, Map, Value};

use crate::parse::{photons, sig12, transmissivity};
use crate::Failure;

#[derive(Args)]
pub struct PointArgs {
    /// Squeezed photons n_s of the input state [photons]
    #[arg(long, value_name = "PHOTONS", value_parser = photons, default_value_t = 0.0)]
    ns: f64,
    /// Thermal photons n_t of the input state [photons]
    #[arg(long, value_name = "PHOTONS", value_parser = photons, default_value_t = 0.0)]
    nt: f64,
    /// Thermal photons n2 of the reference mode [photons]
    #[arg(long, value_name = "PHOTONS", value_parser = photons, default_value_t = 0.0)]
    n2: f64,
    /// Beam-splitter transmissivity τ [dimensionless, 0..1]
    #[arg(long, value_name = "TAU", value_parser = transmissivity, default_value_t = 0.5)]
    tau: f64,
    /// Report discord, mutual information and log-negativity in bits
    #[arg(long)]
    bits: bool,
    /// Print one JSON object instead of `name = value` lines
    #[arg(long)]
    json: bool,
}

enum Field {
    Real(f64),
    Flag(bool),
}

pub fn run(a: &PointArgs) -> Result<(), Failure> {
    let state = SingleModeState::new(a.ns, a.nt)?;
    let mut r = MeasureReport::for_mixing(&state, a.n2, &BeamSplitter::new(a.tau)?)?;
    if a.bits {
        r = r.in_bits();
    }
    let enc = effective_nc(&state)?;

    let mut fields = vec![
        ("n_s", Field::Real(a.ns)),
        ("n_t", Field::Real(a.nt)),
        ("n2", Field::Real(a.n2)),
        ("tau", Field::Real(a.tau)),
        ("n1", Field::Real(state.total_photons())),
        ("depth", Field::Real(nonclassical_depth(&state))),
        ("p_classical", Field::Flag(p_classical(&state))),
        ("effective_nc", Field::Real(enc.value)),
        ("effective_nc_tau", Field::Real(enc.tau_star)),
        ("discord_1g2", Field::Real(r.discord_1g2)),
        ("discord_2g1", Field::Real(r.discord_2g1)),
        ("mutual_info", Field::Real(r.mutual_info)),
        ("classical_corr_1g2", Field::Real(r.classical_corr_1g2)),
        ("ppt_lambda_minus", Field::Real(r.ppt_lambda_minus)),
        ("log_negativity", Field::Real(r.log_negativity)),
        ("entangled", Field::Flag(r.entangled)),
    ];
    if a.tau > 0.0 && a.tau < 1.0 {
        let sep = sep_threshold_ns(a.nt, a.n2, a.tau)?;
        fields.push(("sep_threshold_ns", Field::Real(sep)));
    }
    let units = if a.bits { "bits" } else { "nats" };

    if a.json {
        let mut obj: Map<String, Value> = fields
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    Field::Real(x) => json!(x),
                    Field::Flag(b) => json!(b),
                };
                (k.to_string(), v)
            })
            .collect();
        obj.insert("units".into(), json!(units));
        println!("{}", Value::Object(obj));
    } else {
        println!("# photons for n_*, τ dimensionless, entropic quantities in {units}");
        for (k, v) in &fields {
            match v {
                Field::Real(x) => println!("{k} = {}", sig12(*x)),
                Field::Flag(b) => println!("{k} = {b}"),
            }
        }
    }
    Ok(())
}
