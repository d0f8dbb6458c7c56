//! Partial products of E_rho and the bound `ln(prod E) <= sum (E - 1)`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialProduct {
    pub product: f64,
    /// `sum (E_i - 1)`.
    pub log_sum: f64,
    pub ln_product: f64,
    /// `ln(product) <= log_sum` within 1e-12.
    pub holds: bool,
    /// Running `(i, product, log_sum)` after each factor.
    pub prefix: Vec<(u32, f64, f64)>,
}

pub fn partial_product(e: &[(u32, f64)]) -> Result<PartialProduct> {
    let mut product = 1.0;
    let mut log_sum = 0.0;
    let mut prefix = Vec::with_capacity(e.len());
    for &(i, ei) in e {
        if ei.is_nan() || ei < 1.0 {
            return Err(Error::InvalidArgument(format!("E at i = {i} is {ei}, below 1")));
        }
        product *= ei;
        log_sum += ei - 1.0;
        prefix.push((i, product, log_sum));
    }
    let ln_product = product.ln();
    Ok(PartialProduct { product, log_sum, ln_product, holds: ln_product <= log_sum + 1e-12, prefix })
}
