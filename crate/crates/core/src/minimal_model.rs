//! r-deformation retracts, r-minimal models and homotopy jumping points.
//!
//! A finite space is r-minimal exactly when every short self-map within
//! distance `r` of the identity (in either direction) is bijective, so a
//! single backtracking search per direction decides minimality. When the
//! search finds a collapsing map `φ`, some power `φⁿ` is idempotent and its
//! image is an r-deformation retract; iterating reaches the minimal model.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{ExtDist, Scalar, ValueGroup, DEFAULT_TAU};
use crate::space::{same_space, HomotopyChain, QMetSpace, ShortMap};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum number of assignments tried over a whole query.
    pub budget: u64,
    /// Shuffles tie-breaking in the search order when set.
    pub seed: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, seed: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `d(x, φ(x)) <= r` for every point, i.e. `d(1, φ) <= r`.
    Forward,
    /// `d(φ(x), x) <= r` for every point, i.e. `d(φ, 1) <= r`.
    Backward,
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::SearchBudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

struct EndoSearch<'a, T> {
    space: &'a QMetSpace<T>,
    order: Vec<usize>,
    assignment: Vec<usize>,
    budget: &'a mut Budget,
}

impl<T: Scalar> EndoSearch<'_, T> {
    fn run(&mut self, depth: usize, domains: &[Vec<usize>]) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(!is_injective(&self.assignment, self.space.len()));
        }
        let x = self.order[depth];
        for &y in &domains[x] {
            self.budget.tick()?;
            let mut next = domains.to_vec();
            next[x] = vec![y];
            let mut dead = false;
            for &z in &self.order[depth + 1..] {
                let dxz = self.space.d(x, z);
                let dzx = self.space.d(z, x);
                next[z].retain(|&w| self.space.d(y, w) <= dxz && self.space.d(w, y) <= dzx);
                if next[z].is_empty() {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.assignment[x] = y;
            if self.run(depth + 1, &next)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn is_injective(images: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    images.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

fn search_direction<T: Scalar>(
    space: &QMetSpace<T>,
    r: &ExtDist<T>,
    direction: Direction,
    rng: &mut Option<ChaCha8Rng>,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    let n = space.len();
    let mut domains: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let mut others: Vec<usize> = (0..n)
                .filter(|&y| {
                    y != x
                        && match direction {
                            Direction::Forward => space.d(x, y) <= r,
                            Direction::Backward => space.d(y, x) <= r,
                        }
                })
                .collect();
            if let Some(rng) = rng.as_mut() {
                others.shuffle(rng);
            }
            others.push(x);
            others
        })
        .collect();
    if domains.iter().all(|d| d.len() == 1) {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..n).collect();
    if let Some(rng) = rng.as_mut() {
        order.shuffle(rng);
    }
    order.sort_by(|&a, &b| domains[b].len().cmp(&domains[a].len()));
    // arc consistency against the identity-free start is left to the search
    for d in domains.iter_mut() {
        d.shrink_to_fit();
    }
    let mut search = EndoSearch { space, order, assignment: vec![0; n], budget };
    if search.run(0, &domains)? {
        Ok(Some(search.assignment))
    } else {
        Ok(None)
    }
}

fn endo_search<T: Scalar>(
    space: &QMetSpace<T>,
    r: &ExtDist<T>,
    rng: &mut Option<ChaCha8Rng>,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    for direction in [Direction::Forward, Direction::Backward] {
        if let Some(found) = search_direction(space, r, direction, rng, budget)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// A non-injective short self-map within distance `r` of the identity in
/// one direction, or `None` when the space is r-minimal.
pub fn find_contracting_endo<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    r: &ExtDist<T>,
    options: &SearchOptions,
) -> Result<Option<ShortMap<T>>> {
    let mut budget = Budget { limit: options.budget, used: 0 };
    let mut rng = options.seed.map(ChaCha8Rng::seed_from_u64);
    Ok(endo_search(space, r, &mut rng, &mut budget)?
        .map(|images| ShortMap::new_unchecked(space.clone(), space.clone(), images)))
}

/// Is the space r-minimal?
pub fn is_r_minimal<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    r: &ExtDist<T>,
    options: &SearchOptions,
) -> Result<bool> {
    Ok(find_contracting_endo(space, r, options)?.is_none())
}

fn power_images(images: &[usize], times: usize) -> Vec<usize> {
    (0..images.len())
        .map(|mut x| {
            for _ in 0..times {
                x = images[x];
            }
            x
        })
        .collect()
}

fn idempotent_power_images(images: &[usize]) -> (usize, Vec<usize>) {
    let mut power = images.to_vec();
    let mut n = 1;
    loop {
        if power.iter().all(|&y| power[y] == y) {
            return (n, power);
        }
        power = power.iter().map(|&y| images[y]).collect();
        n += 1;
    }
}

/// The least `n >= 1` with `φⁿ` idempotent, together with `φⁿ`.
pub fn idempotent_power<T: Scalar>(phi: &ShortMap<T>) -> Result<(usize, ShortMap<T>)> {
    if !same_space(phi.source(), phi.target()) {
        return Err(Error::MismatchedSpaces);
    }
    let (n, images) = idempotent_power_images(phi.images());
    Ok((n, ShortMap::new_unchecked(phi.source().clone(), phi.target().clone(), images)))
}

/// An r-deformation retract `A ⊆ X` with its retraction and a homotopy
/// chain from `1_X` to `ι∘ρ`.
#[derive(Clone, Debug)]
pub struct RetractionResult<T> {
    /// Indices into the original space, increasing.
    pub subset: Vec<usize>,
    pub model: Arc<QMetSpace<T>>,
    pub retraction: ShortMap<T>,
    pub inclusion: ShortMap<T>,
    pub certificate: HomotopyChain<T>,
}

impl<T: Scalar> RetractionResult<T> {
    /// The trivial retract `X ⊆ X`.
    pub fn trivial(space: &Arc<QMetSpace<T>>, radius: ExtDist<T>) -> Self {
        let id = ShortMap::identity(space);
        Self {
            subset: (0..space.len()).collect(),
            model: space.clone(),
            retraction: id.clone(),
            inclusion: id.clone(),
            certificate: HomotopyChain::new(vec![id], radius).expect("nonempty"),
        }
    }

    pub fn len(&self) -> usize {
        self.subset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subset.is_empty()
    }

    /// `ι∘ρ` as a self-map of the ambient space.
    pub fn projection(&self) -> Vec<usize> {
        self.retraction.images().iter().map(|&i| self.subset[i]).collect()
    }

    /// Refines `self` by a retraction of its model, producing a retraction of
    /// the ambient space. The certificate of `step` is lifted along
    /// `ι∘(-)∘ρ` and appended.
    fn refine(&self, step: &RetractionResult<T>, radius: ExtDist<T>) -> Self {
        let ambient = self.retraction.source().clone();
        let subset: Vec<usize> = step.subset.iter().map(|&i| self.subset[i]).collect();
        let model = step.model.clone();
        let retraction_images: Vec<usize> =
            self.retraction.images().iter().map(|&i| step.retraction.apply(i)).collect();
        let retraction = ShortMap::new_unchecked(ambient.clone(), model.clone(), retraction_images);
        let inclusion = ShortMap::new_unchecked(model.clone(), ambient.clone(), subset.clone());
        let mut certificate = self.certificate.clone();
        for map in &step.certificate.maps()[1..] {
            let lifted = self
                .retraction
                .images()
                .iter()
                .map(|&i| self.subset[map.apply(i)])
                .collect();
            certificate.push(ShortMap::new_unchecked(ambient.clone(), ambient.clone(), lifted));
        }
        certificate.set_radius(radius);
        Self { subset, model, retraction, inclusion, certificate }
    }
}

fn minimal_model_with<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    r: &ExtDist<T>,
    rng: &mut Option<ChaCha8Rng>,
    budget: &mut Budget,
) -> Result<RetractionResult<T>> {
    let mut current = RetractionResult::trivial(space, r.clone());
    loop {
        let model = current.model.clone();
        let Some(images) = endo_search(&model, r, rng, budget)? else {
            return Ok(current);
        };
        let (_, idem) = idempotent_power_images(&images);
        let mut local_subset: Vec<usize> = idem.clone();
        local_subset.sort_unstable();
        local_subset.dedup();
        let next_model = Arc::new(model.subspace(&local_subset));
        let position = |p: usize| local_subset.binary_search(&p).unwrap();
        let retraction = ShortMap::new_unchecked(
            model.clone(),
            next_model.clone(),
            idem.iter().map(|&y| position(y)).collect(),
        );
        let inclusion =
            ShortMap::new_unchecked(next_model.clone(), model.clone(), local_subset.clone());
        let mut maps = vec![ShortMap::identity(&model)];
        let (n, _) = idempotent_power_images(&images);
        for k in 1..=n {
            maps.push(ShortMap::new_unchecked(model.clone(), model.clone(), power_images(&images, k)));
        }
        let step = RetractionResult {
            subset: local_subset,
            model: next_model,
            retraction,
            inclusion,
            certificate: HomotopyChain::new(maps, r.clone())?,
        };
        current = current.refine(&step, r.clone());
    }
}

/// An r-minimal model of `space` realised as an r-deformation retract.
pub fn minimal_model<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    r: &ExtDist<T>,
    options: &SearchOptions,
) -> Result<RetractionResult<T>> {
    let mut budget = Budget { limit: options.budget, used: 0 };
    let mut rng = options.seed.map(ChaCha8Rng::seed_from_u64);
    minimal_model_with(space, r, &mut rng, &mut budget)
}

#[derive(Clone, Debug)]
pub struct JumpingOptions {
    pub search: SearchOptions,
    /// Grouping tolerance for float distances.
    pub tau: f64,
    /// Re-evaluates the model size at one value inside every gap between
    /// candidate thresholds.
    pub verify_plateaus: bool,
}

impl Default for JumpingOptions {
    fn default() -> Self {
        Self { search: SearchOptions::default(), tau: DEFAULT_TAU, verify_plateaus: false }
    }
}

#[derive(Clone, Debug)]
pub struct JumpingPointsResult<T> {
    pub space_size: usize,
    /// Thresholds `r_1 < … < r_k` at which the model shrinks.
    pub points: Vec<T>,
    /// `|M_{r_i}(X)|` for each jumping point.
    pub model_sizes: Vec<usize>,
    /// `|M_{r_i}(X)| / |X|`.
    pub ratios: Vec<f64>,
    /// Nested retracts of the original space, one per jumping point.
    pub models: Vec<RetractionResult<T>>,
    /// Candidate groups in which distinct float values were merged.
    pub merged_groups: Vec<ValueGroup<T>>,
}

/// Homotopy jumping points. Candidates are the distinct finite distances of
/// the space: the constraints `d(x,y) <= r` only change there.
pub fn jumping_points<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    options: &JumpingOptions,
) -> Result<JumpingPointsResult<T>> {
    let mut budget = Budget { limit: options.search.budget, used: 0 };
    let mut rng = options.search.seed.map(ChaCha8Rng::seed_from_u64);
    let groups = space.distance_values(options.tau);
    let merged_groups = groups.iter().filter(|g| g.merged()).cloned().collect();

    let mut current = RetractionResult::trivial(space, ExtDist::zero());
    let mut result = JumpingPointsResult {
        space_size: space.len(),
        points: Vec::new(),
        model_sizes: Vec::new(),
        ratios: Vec::new(),
        models: Vec::new(),
        merged_groups,
    };
    let mut previous: Option<T> = None;
    for group in &groups {
        if current.len() == 1 {
            break;
        }
        if options.verify_plateaus {
            let low = previous.clone().unwrap_or_else(T::zero);
            if let Some(mid) = low.value_between(&group.min) {
                check_plateau(&current, &mid, &mut rng, &mut budget)?;
            }
        }
        let r = ExtDist::Finite(group.max.clone());
        let step = minimal_model_with(&current.model, &r, &mut rng, &mut budget)?;
        if step.len() < current.len() {
            current = current.refine(&step, r);
            result.points.push(group.max.clone());
            result.model_sizes.push(current.len());
            result.ratios.push(current.len() as f64 / space.len() as f64);
            result.models.push(current.clone());
        }
        previous = Some(group.max.clone());
    }
    if options.verify_plateaus {
        if let Some(last) = &previous {
            let beyond = last.clone() + last.clone() + T::from_i64(1);
            check_plateau(&current, &beyond, &mut rng, &mut budget)?;
        }
    }
    Ok(result)
}

fn check_plateau<T: Scalar>(
    current: &RetractionResult<T>,
    r: &T,
    rng: &mut Option<ChaCha8Rng>,
    budget: &mut Budget,
) -> Result<()> {
    let probe = minimal_model_with(&current.model, &ExtDist::Finite(r.clone()), rng, budget)?;
    if probe.len() != current.len() {
        return Err(Error::PreconditionViolated(format!(
            "model size changes inside a candidate gap at r = {r}"
        )));
    }
    Ok(())
}

/// Nested retracts `X ⊃ M_{r_1}(X) ⊃ … ⊃ M_{r_k}(X)` as subsets of `X`.
pub fn nested_models<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    options: &JumpingOptions,
) -> Result<Vec<RetractionResult<T>>> {
    Ok(jumping_points(space, options)?.models)
}

/// The model at the largest jumping point, or the space itself.
pub fn stable_model<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    options: &JumpingOptions,
) -> Result<Arc<QMetSpace<T>>> {
    Ok(jumping_points(space, options)?
        .models
        .last()
        .map_or_else(|| space.clone(), |m| m.model.clone()))
}

fn signature<T: Scalar>(space: &QMetSpace<T>, x: usize) -> (Vec<ExtDist<T>>, Vec<ExtDist<T>>) {
    let mut out: Vec<_> = (0..space.len()).map(|y| space.d(x, y).clone()).collect();
    let mut inc: Vec<_> = (0..space.len()).map(|y| space.d(y, x).clone()).collect();
    out.sort();
    inc.sort();
    (out, inc)
}

/// A distance-preserving bijection `X → Y`, if one exists.
pub fn is_isometric<T: Scalar>(x: &QMetSpace<T>, y: &QMetSpace<T>) -> Option<Vec<usize>> {
    if x.len() != y.len() {
        return None;
    }
    let n = x.len();
    let sx: Vec<_> = (0..n).map(|p| signature(x, p)).collect();
    let sy: Vec<_> = (0..n).map(|p| signature(y, p)).collect();
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|p| (0..n).filter(|&q| sx[p] == sy[q]).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| candidates[p].len());

    fn extend<T: Scalar>(
        x: &QMetSpace<T>,
        y: &QMetSpace<T>,
        order: &[usize],
        candidates: &[Vec<usize>],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        let Some(&p) = order.get(depth) else { return true };
        for &q in &candidates[p] {
            if used[q] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&a| {
                let b = map[a].unwrap();
                x.d(p, a) == y.d(q, b) && x.d(a, p) == y.d(b, q)
            });
            if !consistent {
                continue;
            }
            map[p] = Some(q);
            used[q] = true;
            if extend(x, y, order, candidates, map, used, depth + 1) {
                return true;
            }
            map[p] = None;
            used[q] = false;
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n];
    extend(x, y, &order, &candidates, &mut map, &mut used, 0)
        .then(|| map.into_iter().map(Option::unwrap).collect())
}
