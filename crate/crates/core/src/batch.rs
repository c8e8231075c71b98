//! Running independent analyses over many inputs. Results keep input order
//! whichever executor runs them.

use crate::classify::{self, HessianClassification};
use crate::diffcalc::{self, RankProfile};
use crate::error::Result;
use crate::normform::{self, Bezout, Mat, WeakSmith};
use crate::polyring::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// rayon's global pool; same as `Sequential` without the `parallel`
    /// feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

pub fn map<T, R, F>(items: &[T], exec: Exec, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().map(f).collect(),
        Exec::Parallel => par_map(items, f),
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Rank profiles with all variables main.
pub fn rank_profiles(polys: &[Polynomial], exec: Exec) -> Vec<Result<RankProfile>> {
    map(polys, exec, |h| diffcalc::rank_profile(h, h.arity()))
}

pub fn classify_all(polys: &[Polynomial], exec: Exec) -> Vec<Result<HessianClassification>> {
    map(polys, exec, classify::classify_hessian)
}

/// Weak Smith decompositions at each matrix's own rank.
pub fn weak_smith_all<S: Bezout>(mats: &[Mat<S>], exec: Exec) -> Vec<Result<WeakSmith<S>>> {
    map(mats, exec, |p| normform::weak_smith(p, normform::rank(p)))
}
