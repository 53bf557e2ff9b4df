//! Python bindings for `efftop`.

use ::efftop::cli::{self, CliError};
use ::efftop::kernel::{Fuel, Outcome};
use ::efftop::{nplus, reals};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(efftop, OutOfFuel, PyException, "The step budget ran out before the machine halted.");

fn to_py(e: CliError) -> PyErr {
    match e {
        CliError::Input(msg) => PyValueError::new_err(msg),
        e @ CliError::OutOfFuel { .. } => OutOfFuel::new_err(e.to_string()),
    }
}

fn reals_err(e: reals::RealsError) -> PyErr {
    to_py(e.into())
}

/// Runs an `efftop` command line (without the program name) and returns
/// its JSON output lines.
#[pyfunction]
fn run(args: Vec<String>) -> PyResult<Vec<String>> {
    let argv = std::iter::once("efftop".to_string()).chain(args);
    let lines = cli::run_args(argv).map_err(to_py)?;
    Ok(lines.iter().map(|v| v.to_string()).collect())
}

/// A rational within `2^-bits` of the real `x`, as `"p/q"`.
#[pyfunction]
#[pyo3(signature = (x, bits, fuel = 1_000_000))]
fn approx(x: &str, bits: u64, fuel: u64) -> PyResult<String> {
    let name = reals::RealSpec::parse(x).and_then(|s| s.build()).map_err(reals_err)?;
    let q = reals::approx_rational(&name, bits, Fuel(fuel)).map_err(reals_err)?;
    Ok(reals::format_rational(&q))
}

/// Steps taken to confirm that `x` lies in the interval union `open`, or
/// `None` if the budget ran out first.
#[pyfunction]
#[pyo3(signature = (x, open, fuel = 1_000_000))]
fn member(x: &str, open: &str, fuel: u64) -> PyResult<Option<u64>> {
    let name = reals::RealSpec::parse(x).and_then(|s| s.build()).map_err(reals_err)?;
    let o = reals::parse_open(open).map_err(reals_err)?;
    Ok(match reals::member_real(&name, &o, Fuel(fuel)) {
        Outcome::Halted { steps, .. } => Some(steps),
        Outcome::OutOfFuel { .. } => None,
    })
}

/// A finite point of `{x : x(i) = v for some (i, v) in conds}`, a set that
/// must contain ∞ for the search to succeed; `None` when the budget runs out.
#[pyfunction]
#[pyo3(signature = (conds, fuel = 100_000))]
fn wso_position(conds: Vec<(u64, u64)>, fuel: u64) -> Option<u64> {
    nplus::wso_search(&nplus::position_test(&conds), &nplus::infinity_name(), Fuel(fuel)).map(|p| p.n)
}

#[pymodule]
fn efftop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("OutOfFuel", m.py().get_type::<OutOfFuel>())?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(approx, m)?)?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    m.add_function(wrap_pyfunction!(wso_position, m)?)?;
    Ok(())
}
