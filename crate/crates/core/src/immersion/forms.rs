//! Differential forms in chart coordinates and their discrete exterior
//! derivatives.

use std::sync::Arc;

use crate::error::{GeometryError, Result};
use crate::linalg::{Operator, Vector};

use super::charts::Chart;
use super::geometry::{tangent_frame, unit_normal};

pub type ComponentFn<T> = Arc<dyn Fn(&Vector) -> Result<T> + Send + Sync>;

/// A form given by its component functions on the chart.
///
/// Two-form components are antisymmetric by construction. Three-form
/// components are listed for `i < j < k` in lexicographic order.
#[derive(Clone)]
pub enum FormField {
    One(ComponentFn<Vector>),
    Two(ComponentFn<Operator>),
    Three(ComponentFn<Vec<f64>>),
}

impl std::fmt::Debug for FormField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let degree = match self {
            FormField::One(_) => 1,
            FormField::Two(_) => 2,
            FormField::Three(_) => 3,
        };
        write!(f, "FormField(degree {degree})")
    }
}

impl FormField {
    pub fn degree(&self) -> usize {
        match self {
            FormField::One(_) => 1,
            FormField::Two(_) => 2,
            FormField::Three(_) => 3,
        }
    }

    pub fn one(&self, u: &Vector) -> Result<Vector> {
        match self {
            FormField::One(f) => f(u),
            _ => Err(wrong_degree(1, self.degree())),
        }
    }

    pub fn two(&self, u: &Vector) -> Result<Operator> {
        match self {
            FormField::Two(f) => f(u),
            _ => Err(wrong_degree(2, self.degree())),
        }
    }

    pub fn three(&self, u: &Vector) -> Result<Vec<f64>> {
        match self {
            FormField::Three(f) => f(u),
            _ => Err(wrong_degree(3, self.degree())),
        }
    }

    /// The exact form `dg` with components `∂_i g` by central differences
    /// at step `h`.
    pub fn exact(g: ComponentFn<f64>, dim: usize, h: f64) -> Self {
        FormField::One(Arc::new(move |u: &Vector| {
            let mut out = Vector::zeros(dim);
            for i in 0..dim {
                out[i] = central(|v| g(v), u, i, h)?;
            }
            Ok(out)
        }))
    }
}

fn wrong_degree(expected: usize, got: usize) -> GeometryError {
    GeometryError::Parameter(format!("expected a {expected}-form, got a {got}-form"))
}

fn central<T, F>(f: F, u: &Vector, i: usize, h: f64) -> Result<T>
where
    F: Fn(&Vector) -> Result<T>,
    T: std::ops::Sub<Output = T> + std::ops::Div<f64, Output = T>,
{
    let mut plus = u.clone();
    plus[i] += h;
    let mut minus = u.clone();
    minus[i] -= h;
    Ok((f(&plus)? - f(&minus)?) / (2.0 * h))
}

fn check_step(h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(GeometryError::Parameter(format!("step must be positive, got {h}")));
    }
    Ok(())
}

/// Contact one-form `η_i = <ξ, ∂_i f>` with `ξ = -JN`.
pub fn reeb_form(chart: Arc<dyn Chart>, h: f64) -> FormField {
    FormField::One(Arc::new(move |u: &Vector| {
        let t = tangent_frame(chart.as_ref(), u, h)?;
        let normal = unit_normal(chart.as_ref(), u, &t)?;
        let n = chart.complex_dim();
        // -J N, with J(x, y) = (-y, x)
        let mut xi = Vector::zeros(2 * n);
        for k in 0..n {
            xi[k] = normal[n + k];
            xi[n + k] = -normal[k];
        }
        Ok(t.transpose() * xi)
    }))
}

/// Fundamental two-form `ω_ij = <J ∂_i f, ∂_j f>`.
pub fn fundamental_form(chart: Arc<dyn Chart>, h: f64) -> FormField {
    FormField::Two(Arc::new(move |u: &Vector| {
        let t = tangent_frame(chart.as_ref(), u, h)?;
        let n = chart.complex_dim();
        let mut jt = Operator::zeros(2 * n, t.ncols());
        for c in 0..t.ncols() {
            for k in 0..n {
                jt[(k, c)] = -t[(n + k, c)];
                jt[(n + k, c)] = t[(k, c)];
            }
        }
        let a = jt.transpose() * &t;
        Ok((&a - a.transpose()) * 0.5)
    }))
}

/// `(dη)_ij = ∂_i η_j - ∂_j η_i` by central differences at step `h`.
pub fn exterior_derivative_oneform(eta: &FormField, h: f64) -> Result<FormField> {
    check_step(h)?;
    let FormField::One(eta) = eta.clone() else {
        return Err(wrong_degree(1, eta.degree()));
    };
    Ok(FormField::Two(Arc::new(move |u: &Vector| {
        let m = u.len();
        let mut partials = Operator::zeros(m, m);
        for i in 0..m {
            let d = central(|v| eta(v), u, i, h)?;
            partials.set_row(i, &d.transpose());
        }
        Ok(&partials - partials.transpose())
    })))
}

/// `(dω)_ijk = ∂_i ω_jk + ∂_j ω_ki + ∂_k ω_ij` by central differences.
pub fn exterior_derivative_twoform(omega: &FormField, h: f64) -> Result<FormField> {
    check_step(h)?;
    let FormField::Two(omega) = omega.clone() else {
        return Err(wrong_degree(2, omega.degree()));
    };
    Ok(FormField::Three(Arc::new(move |u: &Vector| {
        let m = u.len();
        let partials = (0..m)
            .map(|i| central(|v| omega(v), u, i, h))
            .collect::<Result<Vec<Operator>>>()?;
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    out.push(partials[i][(j, k)] + partials[j][(k, i)] + partials[k][(i, j)]);
                }
            }
        }
        Ok(out)
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immersion::charts::SphereChart;

    #[test]
    fn exact_forms_are_closed() {
        let chart: Arc<dyn Chart> = Arc::new(SphereChart::new(2, 1.5).unwrap());
        let h = 1e-3;
        let c = chart.clone();
        let g = Arc::new(move |u: &Vector| Ok(c.eval_checked(u)?[1] * c.eval_checked(u)?[3]));
        let eta = FormField::exact(g, 3, h);
        let d = exterior_derivative_oneform(&eta, h).unwrap();
        let u = Vector::from_vec(vec![0.2, -0.1, 0.3]);
        let v = d.two(&u).unwrap();
        assert!(v.amax() < 1e-8, "{}", v.amax());
        assert_eq!(v.clone() + v.transpose(), Operator::zeros(3, 3));
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let chart: Arc<dyn Chart> = Arc::new(SphereChart::new(2, 1.0).unwrap());
        let omega = fundamental_form(chart, 1e-3);
        assert!(exterior_derivative_oneform(&omega, 1e-3).is_err());
    }
}
