//! Reference checks bundled with the binary.

use algser::algebra::rat::{frac, int};
use algser::algebra::{Rat, TruncatedSeries};
use algser::expansion::{expand, Method};
use algser::fixtures::{liftable_instances, reference_poly, reference_seed, three_column_shape};
use algser::flajolet_soria::Budget;
use algser::henselization::{omega0_closed, order_sequence, separate};
use algser::newton_oracle::newton_lift;
use algser::wilczynski::{certify, reconstruct, Implicitization, DEFAULT_MINOR_BUDGET};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: &str, r: algser::Result<Option<String>>) -> Check {
    match r {
        Ok(None) => Check {
            name: name.to_string(),
            pass: true,
            detail: None,
        },
        Ok(Some(why)) => Check {
            name: name.to_string(),
            pass: false,
            detail: Some(why),
        },
        Err(e) => Check {
            name: name.to_string(),
            pass: false,
            detail: Some(e.to_string()),
        },
    }
}

fn reference_separation() -> algser::Result<Option<String>> {
    let p = reference_poly();
    let c = TruncatedSeries::from_tail(&reference_seed());
    let trace = order_sequence(&p, &c, 1)?;
    let sep = separate(&p, &c)?;
    let omega = omega0_closed(&p, &c, sep.k0, sep.i_k0)?;
    let got = (
        sep.k0,
        trace.order(0),
        trace.order(1),
        omega.clone(),
        sep.omega0(),
    );
    let want = (0, Some(2), Some(3), int(2), int(2));
    Ok((got != want).then(|| format!("(k0, i0, i1, omega0, omega0') = {got:?}")))
}

fn reference_expansion(budget: u64) -> algser::Result<Option<String>> {
    let want: Vec<Rat> = vec![int(1), int(1), int(0), int(-1), frac(-1, 2)];
    for m in Method::ALL {
        let mut c = reference_seed();
        c.extend(expand(
            &reference_poly(),
            &reference_seed(),
            9,
            m,
            &mut Budget::new(budget),
        )?);
        if c[..5] != want[..] {
            return Ok(Some(format!("{m} gave {:?}", &c[..5])));
        }
    }
    Ok(None)
}

fn three_column_reconstruction() -> algser::Result<Option<String>> {
    let c = newton_lift(&reference_poly(), &reference_seed(), 16)?.series;
    let r = reconstruct(&three_column_shape(), &c, 2, 2, DEFAULT_MINOR_BUDGET)?;
    let Implicitization::Found { poly, .. } = r else {
        return Ok(Some(format!("{r:?}")));
    };
    if poly != reference_poly().normalized() {
        return Ok(Some(format!("recovered {poly}")));
    }
    Ok((!certify(&poly, &c, 2, 2)?).then(|| "certificate failed".to_string()))
}

fn agreement(seed: u64, n: usize, budget: u64) -> algser::Result<Option<String>> {
    for (idx, inst) in liftable_instances(seed, n).iter().enumerate() {
        let mut outs = Vec::new();
        for m in Method::ALL {
            outs.push(expand(
                &inst.poly,
                &inst.seed,
                6,
                m,
                &mut Budget::new(budget),
            )?);
        }
        if outs.windows(2).any(|w| w[0] != w[1]) {
            return Ok(Some(format!("instance {idx} ({}) disagrees", inst.poly)));
        }
    }
    Ok(None)
}

pub fn run(seed: u64, instances: usize, budget: u64) -> Report {
    let checks = vec![
        check("reference-separation", reference_separation()),
        check("reference-expansion", reference_expansion(budget)),
        check("three-column-reconstruction", three_column_reconstruction()),
        check("triple-agreement", agreement(seed, instances, budget)),
    ];
    Report {
        passed: checks.iter().all(|c| c.pass),
        checks,
    }
}
