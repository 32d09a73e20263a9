use std::path::Path;

use serde_json::{json, Value};
use stabent::entropy::{boundary_curve, curve_csv, expand_quadrants};
use stabent::graphstate::AmplitudeRecurrence;
use stabent::urelations::{
    check_tightness, group_ur_verify, perfect_matching, symmetric_difference,
};
use stabent::{BasisLabel, Dyadic, EntropySpec, StabilizerGroup};

use crate::input::{load_pair, Input};
use crate::output::{emit, json};

fn err(e: stabent::Error) -> String {
    e.to_string()
}

/// Largest `|⟨s_0|t_j⟩|²` over the basis of `t`, by enumerating both groups.
fn max_overlap_by_enumeration(s: &StabilizerGroup, t: &StabilizerGroup) -> stabent::Result<Dyadic> {
    let mut best = Dyadic::ZERO;
    for label in BasisLabel::all(t.n()) {
        best = best.max(
            s.overlap_squared_by_enumeration(&t.basis_state_group(label))?
                .overlap_squared,
        );
    }
    Ok(best)
}

pub fn bound(a: &Path, b: &Path, max_n: usize, out: Option<&Path>) -> Result<bool, String> {
    let (a, b) = load_pair(a, b)?;
    let (s, t) = (a.group().map_err(err)?, b.group().map_err(err)?);
    let n = s.n();
    let inter = s.intersect(&t).map_err(err)?;
    let via_intersection = -(n as i32 - inter.c as i32);

    let graphs = match (&a, &b) {
        (Input::Graph(ga), Input::Graph(gb)) if n <= stabent::graphstate::MAX_AMPLITUDE_QUBITS => {
            Some((ga, gb))
        }
        _ => None,
    };
    // `log2 r²` from the primary route, plus the cross-check when one ran.
    let (method, log2_r_sq, agreement) = match graphs {
        Some((ga, gb)) => {
            let sum = ga.graph_sum(gb).map_err(err)?;
            let r = AmplitudeRecurrence::new(&sum).table().map_err(err)?.r_max();
            let e = r
                .exact_log2()
                .ok_or_else(|| format!("graph amplitude maximum {r} is not a power of two"))?;
            ("recurrence", 2 * e, Some(2 * e == via_intersection))
        }
        None => {
            let check = if n <= max_n {
                let enumerated = max_overlap_by_enumeration(&s, &t).map_err(err)?;
                Some(enumerated == Dyadic::pow2(via_intersection))
            } else {
                None
            };
            ("intersection", via_intersection, check)
        }
    };
    let report = json!({
        "n": n,
        "bound_bits": -log2_r_sq as f64 / 2.0,
        "r": (log2_r_sq as f64 / 2.0).exp2(),
        "r_squared": Dyadic::pow2(log2_r_sq).to_string(),
        "c": inter.c,
        "p": inter.p(),
        "q": inter.q(),
        "method": method,
        "agreement": agreement,
    });
    emit(&json(report), out)?;
    Ok(agreement != Some(false))
}

pub fn tightness(a: &Path, b: &Path, max_n: usize, out: Option<&Path>) -> Result<bool, String> {
    let (a, b) = load_pair(a, b)?;
    let report =
        check_tightness(&a.group().map_err(err)?, &b.group().map_err(err)?, max_n).map_err(err)?;
    let value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    emit(&json(value), out)?;
    Ok(report.oracle_agreement)
}

pub fn matching(
    a: &Path,
    b: &Path,
    specs: &[EntropySpec],
    samples: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool, String> {
    let (a, b) = load_pair(a, b)?;
    let (s, t) = (a.group().map_err(err)?, b.group().map_err(err)?);
    let m = symmetric_difference(&s, &t).map_err(err)?;
    let pairs = perfect_matching(&m).map_err(err)?;
    let obs = m.observables().map_err(err)?;
    let ops = obs.ops();

    let mut ok = true;
    let listed: Vec<Value> = pairs
        .pairs
        .iter()
        .map(|&(k, l)| {
            let anticommute = !ops[k].commutes(&ops[l]).unwrap_or(true);
            ok &= anticommute;
            json!({"k": k, "l": l, "a": ops[k].to_string(), "b": ops[l].to_string(), "anticommute": anticommute})
        })
        .collect();
    let mut relations = Vec::new();
    for spec in specs {
        let rep = group_ur_verify(&s, &t, spec, samples, seed).map_err(err)?;
        ok &= rep.report.tight;
        relations.push(json!({
            "entropy": spec.kind(),
            "q": spec.q(),
            "bound": rep.report.bound,
            "basis_states_attain": rep.basis_states_attain,
            "random_samples": rep.random_samples,
            "random_min": if samples > 0 { Some(rep.random_min) } else { None },
            "maximally_mixed": rep.maximally_mixed,
            "tight": rep.report.tight,
        }));
    }
    let summary = json!({
        "size": m.len(),
        "s_only": m.s_only().len(),
        "t_only": m.t_only().len(),
        "pairs": listed,
        "relations": relations,
    });
    match out {
        Some(path) => {
            emit(&pairs.to_csv(), Some(path))?;
            emit(&json(summary), None)?;
        }
        None => emit(&json(summary), None)?,
    }
    Ok(ok)
}

pub fn boundary(spec: &EntropySpec, samples: usize, out: Option<&Path>) -> Result<bool, String> {
    let points = boundary_curve(spec, samples).map_err(err)?;
    emit(&curve_csv(spec, &expand_quadrants(&points)), out)?;
    Ok(true)
}

pub fn amplitudes(path: &Path, out: Option<&Path>) -> Result<bool, String> {
    match Input::load(path)? {
        Input::Graph(g) => {
            let table = AmplitudeRecurrence::new(&g).table().map_err(err)?;
            emit(&table.to_csv(), out)?;
            Ok(true)
        }
        Input::Group(_) => Err(format!("{}: expected a graph file", path.display())),
    }
}
