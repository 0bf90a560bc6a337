//! Batch evaluation over parameter grids and matrix lists.
//!
//! With the `parallel` feature (default) work is spread over the rayon
//! thread pool; without it the same functions run sequentially. The
//! `_seq` variants are always sequential. Output order matches input order
//! either way.

use std::ops::RangeInclusive;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::lattice::{cokernel, AbelianGroup, IntMatrix};
use crate::recipe::{run_recipe, Recipe, RecipeError, Report, RunError};

pub type ParamPoint = Vec<(String, i64)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SweepError {
    #[error(transparent)]
    Recipe(#[from] RecipeError),
    #[error(transparent)]
    Run(#[from] RunError),
}

/// Cartesian product of the given ranges, last axis varying fastest.
pub fn grid(axes: &[(&str, RangeInclusive<i64>)]) -> Vec<ParamPoint> {
    let mut points: Vec<ParamPoint> = vec![Vec::new()];
    for (name, range) in axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                range.clone().map(move |v| {
                    let mut q = p.clone();
                    q.push((name.to_string(), v));
                    q
                })
            })
            .collect();
    }
    points
}

fn run_point(recipe: &Recipe, point: &ParamPoint) -> Result<Report, SweepError> {
    Ok(run_recipe(&recipe.with_params(point)?)?)
}

pub fn sweep_recipe_seq(recipe: &Recipe, points: &[ParamPoint]) -> Vec<Result<Report, SweepError>> {
    points.iter().map(|p| run_point(recipe, p)).collect()
}

pub fn sweep_recipe(recipe: &Recipe, points: &[ParamPoint]) -> Vec<Result<Report, SweepError>> {
    #[cfg(feature = "parallel")]
    {
        points.par_iter().map(|p| run_point(recipe, p)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_recipe_seq(recipe, points)
    }
}

pub fn cokernels_seq(matrices: &[IntMatrix]) -> Vec<AbelianGroup> {
    matrices.iter().map(cokernel).collect()
}

pub fn cokernels(matrices: &[IntMatrix]) -> Vec<AbelianGroup> {
    #[cfg(feature = "parallel")]
    {
        matrices.par_iter().map(cokernel).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        cokernels_seq(matrices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recipe::builtin_recipe;

    #[test]
    fn grid_order() {
        let g = grid(&[("n", 2..=3), ("m", 1..=2)]);
        let flat: Vec<(i64, i64)> = g.iter().map(|p| (p[0].1, p[1].1)).collect();
        assert_eq!(flat, vec![(2, 1), (2, 2), (3, 1), (3, 2)]);
        assert_eq!(grid(&[]), vec![Vec::new()]);
    }

    #[test]
    fn parallel_matches_sequential() {
        let r = builtin_recipe("Yn").unwrap();
        let pts = grid(&[("n", 2..=5), ("m", 1..=2)]);
        let a: Vec<String> = sweep_recipe(&r, &pts)
            .into_iter()
            .map(|x| x.unwrap().to_json())
            .collect();
        let b: Vec<String> = sweep_recipe_seq(&r, &pts)
            .into_iter()
            .map(|x| x.unwrap().to_json())
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn out_of_range_point_is_an_error() {
        let r = builtin_recipe("Yn").unwrap();
        let res = sweep_recipe(&r, &[vec![("n".to_string(), 1)]]);
        assert!(matches!(
            res[0],
            Err(SweepError::Recipe(RecipeError::ParameterOutOfRange { .. }))
        ));
    }

    #[test]
    fn cokernel_batch() {
        let ms = vec![
            IntMatrix::from_i64(&[&[2, 0], &[0, 3]]),
            IntMatrix::from_i64(&[&[0]]),
        ];
        assert_eq!(cokernels(&ms), cokernels_seq(&ms));
        assert_eq!(cokernels(&ms)[0].to_string(), "Z/6");
    }
}
