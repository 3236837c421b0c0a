//! Reading `.bn` and `.ts` model files.

use std::path::Path;

use stpnet::netdsl::{assemble_assr, parse_network, parse_ts, spec_to_ts};
use stpnet::{DisturbedModel, Network, TransitionSystem};

use crate::CliError;

/// A compiled model file.
pub struct Loaded {
    pub name: String,
    pub ts: TransitionSystem,
    pub network: Option<Network>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}

fn at(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{}: {e}", path.display()))
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = read(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("bn") => {
            let net = parse_network(&text).map_err(|e| at(path, e))?;
            let ts = assemble_assr(&net).map_err(|e| at(path, e))?;
            Ok(Loaded {
                name: net.name.clone(),
                ts,
                network: Some(net),
            })
        }
        Some("ts") => {
            let spec = parse_ts(&text).map_err(|e| at(path, e))?;
            let ts = spec_to_ts(&spec).map_err(|e| at(path, e))?;
            Ok(Loaded {
                name: spec.name,
                ts,
                network: None,
            })
        }
        _ => Err(CliError::Config(format!(
            "{}: unknown model format (expected a .bn or .ts file)",
            path.display()
        ))),
    }
}

/// The nominal/disturbed pair, from one `.bn` file with a `disturbance`
/// block or from two separate files.
pub fn load_disturbed(
    file: Option<&Path>,
    nominal: Option<&Path>,
    disturbed: Option<&Path>,
) -> Result<(String, DisturbedModel), CliError> {
    let (name, nominal_ts, disturbed_ts) = match (file, nominal, disturbed) {
        (Some(path), None, None) => {
            let loaded = load(path)?;
            let net = loaded.network.ok_or_else(|| {
                CliError::Config(format!(
                    "{}: a single model file must be a .bn network with disturbance variables; \
                     otherwise pass --nominal and --disturbed",
                    path.display()
                ))
            })?;
            if !net.has_disturbance() {
                return Err(CliError::Config(format!(
                    "{}: network declares no disturbance variables; pass --nominal and --disturbed",
                    path.display()
                )));
            }
            let nominal_net = net.nominal_network().map_err(|e| at(path, e))?;
            let nominal_ts = assemble_assr(&nominal_net).map_err(|e| at(path, e))?;
            (loaded.name, nominal_ts, loaded.ts)
        }
        (None, Some(n), Some(d)) => {
            let nominal = load(n)?;
            let disturbed = load(d)?;
            let mut dts = disturbed.ts;
            let ell = nominal.ts.control_arity();
            if dts.disturbance_arity() == 1 && ell > 0 && dts.n_inputs() % ell == 0 && dts.n_inputs() > ell {
                let s = dts.n_inputs() / ell;
                dts = dts.with_disturbance_arity(s).map_err(|e| at(d, e))?;
            }
            (nominal.name, nominal.ts, dts)
        }
        _ => {
            return Err(CliError::Config(
                "give either one model file or both --nominal and --disturbed".into(),
            ))
        }
    };
    let dm = DisturbedModel::new(nominal_ts, disturbed_ts).map_err(|e| CliError::Config(e.to_string()))?;
    Ok((name, dm))
}
