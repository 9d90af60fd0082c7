//! Buchberger's algorithm for homogeneous submodules of twisted free modules.
//!
//! Pairs are processed degree by degree (the normal strategy; for homogeneous
//! input the sugar degree is the degree). Input generators are fed in at their
//! own degree after that degree's pairs, so an input that reduces to zero at
//! that point is redundant. This gives minimal generating sets for free.

use std::collections::BTreeMap;

use crate::polyring::{monomials_of_degree, Field, Monomial};

use super::module::{scale_vector, sub_scaled, FreeModuleElement, ModMono, ModuleOrder, Vector};
use super::GroebnerError;

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: usize,
}

pub(crate) struct EngineOutput {
    pub basis: Vec<Vector>,
    /// Indices of the inputs that did not reduce to zero when fed in.
    pub minimal_inputs: Vec<usize>,
    /// False if the computation stopped at the degree cap.
    pub complete: bool,
}

struct Engine<'o> {
    order: &'o ModuleOrder,
    basis: Vec<Vector>,
    leads: Vec<ModMono>,
    by_pos: Vec<Vec<usize>>,
    pairs: BTreeMap<i64, Vec<Pair>>,
    use_product_criterion: bool,
}

impl<'o> Engine<'o> {
    fn new(order: &'o ModuleOrder) -> Engine<'o> {
        Engine {
            order,
            basis: Vec::new(),
            leads: Vec::new(),
            by_pos: vec![Vec::new(); order.twists.len()],
            pairs: BTreeMap::new(),
            // Coprime leading terms only give a zero S-pair for ideals.
            use_product_criterion: order.twists.len() == 1 && order.block == 0,
        }
    }

    fn find_reducer(&self, mm: &ModMono) -> Option<usize> {
        self.by_pos[mm.pos]
            .iter()
            .copied()
            .filter(|&k| self.leads[k].mono.divides(&mm.mono))
            .min_by_key(|&k| (self.basis[k].len(), k))
    }

    /// Full reduction: no term of the result is divisible by a leading term.
    fn reduce(&self, v: Vector) -> Vector {
        let mut out = Vec::new();
        let mut cur = v;
        let mut idx = 0;
        while idx < cur.len() {
            let (mm, c) = &cur[idx];
            match self.find_reducer(mm) {
                Some(r) => {
                    let q = self.leads[r].mono.quotient_of(&mm.mono);
                    let c = c.clone();
                    cur = sub_scaled(self.order, &cur[idx..], &c, &q, &self.basis[r]);
                    idx = 0;
                }
                None => {
                    out.push(cur[idx].clone());
                    idx += 1;
                }
            }
        }
        out
    }

    fn s_vector(&self, p: &Pair) -> Vector {
        let mi = self.leads[p.i].mono.quotient_of(&p.lcm);
        let mj = self.leads[p.j].mono.quotient_of(&p.lcm);
        let gi: Vector = self.basis[p.i]
            .iter()
            .map(|(mm, c)| {
                (
                    ModMono {
                        mono: mm.mono.mul(&mi),
                        pos: mm.pos,
                    },
                    c.clone(),
                )
            })
            .collect();
        let one = self.basis[p.i][0].1.field().one();
        sub_scaled(self.order, &gi, &one, &mj, &self.basis[p.j])
    }

    fn insert(&mut self, mut v: Vector) {
        let lc_inv = v[0].1.inv();
        scale_vector(&mut v, &lc_inv);
        let lead = v[0].0;
        let t = self.basis.len();
        self.update_pairs(t, lead);
        self.basis.push(v);
        self.leads.push(lead);
        self.by_pos[lead.pos].push(t);
    }

    /// Gebauer-Moeller update for a new element with leading term `lead`.
    fn update_pairs(&mut self, t: usize, lead: ModMono) {
        let u = lead.mono;
        let leads = &self.leads;
        for ps in self.pairs.values_mut() {
            ps.retain(|p| {
                !(p.pos == lead.pos
                    && u.divides(&p.lcm)
                    && leads[p.i].mono.lcm(&u) != p.lcm
                    && leads[p.j].mono.lcm(&u) != p.lcm)
            });
        }
        self.pairs.retain(|_, ps| !ps.is_empty());

        let cands: Vec<(usize, Monomial)> = self.by_pos[lead.pos]
            .iter()
            .map(|&i| (i, self.leads[i].mono.lcm(&u)))
            .collect();
        // M criterion: a proper divisor among the new lcms makes the pair redundant.
        let survivors: Vec<(usize, Monomial)> = cands
            .iter()
            .filter(|(_, l)| !cands.iter().any(|(_, k)| k != l && k.divides(l)))
            .cloned()
            .collect();
        // F criterion: one pair per lcm; with the product criterion a coprime
        // member discards its whole class.
        let mut classes: BTreeMap<Monomial, Vec<usize>> = BTreeMap::new();
        for (i, l) in survivors {
            classes.entry(l).or_default().push(i);
        }
        let twist = self.order.twists[lead.pos];
        for (l, members) in classes {
            if self.use_product_criterion
                && members.iter().any(|&i| self.leads[i].mono.mul(&u) == l)
            {
                continue;
            }
            let pair = Pair {
                i: members[0],
                j: t,
                lcm: l,
                pos: lead.pos,
            };
            self.pairs
                .entry(l.degree() as i64 + twist)
                .or_default()
                .push(pair);
        }
    }

    fn run(mut self, inputs: Vec<Vector>, degree_cap: Option<i64>) -> EngineOutput {
        let mut pending: BTreeMap<i64, Vec<(usize, Vector)>> = BTreeMap::new();
        for (k, v) in inputs.into_iter().enumerate() {
            if let Some(first) = v.first() {
                pending
                    .entry(self.order.weighted_degree(&first.0))
                    .or_default()
                    .push((k, v));
            }
        }
        let mut minimal_inputs = Vec::new();
        let mut complete = true;
        loop {
            let next = match (self.pairs.keys().next(), pending.keys().next()) {
                (None, None) => break,
                (Some(&a), None) | (None, Some(&a)) => a,
                (Some(&a), Some(&b)) => a.min(b),
            };
            if degree_cap.is_some_and(|cap| next > cap) {
                complete = false;
                break;
            }
            if let Some(mut batch) = self.pairs.remove(&next) {
                let order = self.order;
                batch.sort_by(|a, b| {
                    order
                        .cmp(
                            &ModMono {
                                mono: a.lcm,
                                pos: a.pos,
                            },
                            &ModMono {
                                mono: b.lcm,
                                pos: b.pos,
                            },
                        )
                        .then((a.i, a.j).cmp(&(b.i, b.j)))
                });
                for p in batch {
                    let r = self.reduce(self.s_vector(&p));
                    if !r.is_empty() {
                        self.insert(r);
                    }
                }
            }
            if let Some(batch) = pending.remove(&next) {
                for (k, v) in batch {
                    let r = self.reduce(v);
                    if !r.is_empty() {
                        self.insert(r);
                        minimal_inputs.push(k);
                    }
                }
            }
        }
        self.interreduce();
        EngineOutput {
            basis: self.basis,
            minimal_inputs,
            complete,
        }
    }

    fn interreduce(&mut self) {
        for k in 0..self.basis.len() {
            let v = std::mem::take(&mut self.basis[k]);
            let head = v[0].clone();
            let tail = self.reduce(v[1..].to_vec());
            let mut out = Vec::with_capacity(tail.len() + 1);
            out.push(head);
            out.extend(tail);
            self.basis[k] = out;
        }
    }
}

pub(crate) fn run_engine(
    order: &ModuleOrder,
    inputs: Vec<Vector>,
    degree_cap: Option<i64>,
) -> EngineOutput {
    Engine::new(order).run(inputs, degree_cap)
}

/// Checks that all elements live in the module with `twists` over one ring
/// and are homogeneous.
pub(crate) fn check_inputs(
    gens: &[FreeModuleElement],
    twists: &[i64],
    num_vars: usize,
    field: Field,
) -> Result<(), GroebnerError> {
    for g in gens {
        if g.twists() != twists {
            return Err(GroebnerError::TwistMismatch(format!(
                "{:?} vs {:?}",
                g.twists(),
                twists
            )));
        }
        if g.num_vars() != num_vars || g.field() != field {
            return Err(GroebnerError::RingMismatch);
        }
        if !g.is_homogeneous() {
            return Err(GroebnerError::NotHomogeneous);
        }
    }
    Ok(())
}

/// A reduced Gröbner basis of a homogeneous submodule, under the
/// term-over-position order weighted by the twists.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: ModuleOrder,
    elements: Vec<Vector>,
    num_vars: usize,
    field: Field,
    complete: bool,
}

impl GroebnerBasis {
    /// Gröbner basis of the submodule of `F = sum S(-twists_i)` generated by `gens`.
    pub fn compute(
        gens: &[FreeModuleElement],
        twists: &[i64],
        num_vars: usize,
        field: Field,
    ) -> Result<GroebnerBasis, GroebnerError> {
        GroebnerBasis::compute_truncated(gens, twists, num_vars, field, None)
    }

    /// As [`GroebnerBasis::compute`], stopping after degree `cap` if given;
    /// the result is then a Gröbner basis in degrees `<= cap` only.
    pub fn compute_truncated(
        gens: &[FreeModuleElement],
        twists: &[i64],
        num_vars: usize,
        field: Field,
        cap: Option<i64>,
    ) -> Result<GroebnerBasis, GroebnerError> {
        check_inputs(gens, twists, num_vars, field)?;
        let order = ModuleOrder::top(twists.to_vec());
        let inputs = gens.iter().map(|g| g.to_vector(&order)).collect();
        let out = run_engine(&order, inputs, cap);
        Ok(GroebnerBasis {
            order,
            elements: out.basis,
            num_vars,
            field,
            complete: out.complete,
        })
    }

    pub fn twists(&self) -> &[i64] {
        &self.order.twists
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn elements(&self) -> Vec<FreeModuleElement> {
        self.elements
            .iter()
            .map(|v| {
                FreeModuleElement::from_vector(
                    v,
                    0,
                    self.order.twists.clone(),
                    self.num_vars,
                    self.field,
                )
            })
            .collect()
    }

    /// Leading module monomials as (position, monomial).
    pub fn leading_monomials(&self) -> Vec<(usize, Monomial)> {
        self.elements
            .iter()
            .map(|v| (v[0].0.pos, v[0].0.mono))
            .collect()
    }

    pub fn normal_form(&self, v: &FreeModuleElement) -> Result<FreeModuleElement, GroebnerError> {
        check_inputs(
            std::slice::from_ref(v),
            &self.order.twists,
            self.num_vars,
            self.field,
        )?;
        let mut engine = Engine::new(&self.order);
        engine.basis = self.elements.clone();
        engine.leads = self.elements.iter().map(|e| e[0].0).collect();
        for (k, l) in engine.leads.iter().enumerate() {
            engine.by_pos[l.pos].push(k);
        }
        let r = engine.reduce(v.to_vector(&self.order));
        Ok(FreeModuleElement::from_vector(
            &r,
            0,
            self.order.twists.clone(),
            self.num_vars,
            self.field,
        ))
    }

    /// Membership in the submodule (exact when the basis is complete, or
    /// when `v` has degree at most the cap used).
    pub fn contains(&self, v: &FreeModuleElement) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Dimension of the submodule in `degree`: the number of module monomials
    /// of that degree lying in the leading-term module.
    pub fn hilbert_function(&self, degree: i64) -> u64 {
        let mut total = 0;
        for (pos, &a) in self.order.twists.iter().enumerate() {
            let k = degree - a;
            if k < 0 {
                continue;
            }
            let leads: Vec<Monomial> = self
                .elements
                .iter()
                .filter(|v| v[0].0.pos == pos)
                .map(|v| v[0].0.mono)
                .collect();
            if leads.is_empty() {
                continue;
            }
            total += monomials_of_degree(self.num_vars, k as u32)
                .iter()
                .filter(|m| leads.iter().any(|l| l.divides(m)))
                .count() as u64;
        }
        total
    }
}

/// Gröbner basis of the module generated by `gens` (at least one generator).
pub fn buchberger(gens: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::EmptyInput)?;
    Ok(GroebnerBasis::compute(gens, first.twists(), first.num_vars(), first.field())?.elements())
}

/// Division of `v` by the list `divisors` (which need not be a Gröbner basis):
/// the remainder has no term divisible by a leading term of the list.
pub fn normal_form(
    v: &FreeModuleElement,
    divisors: &[FreeModuleElement],
) -> Result<FreeModuleElement, GroebnerError> {
    check_inputs(divisors, v.twists(), v.num_vars(), v.field())?;
    check_inputs(std::slice::from_ref(v), v.twists(), v.num_vars(), v.field())?;
    let order = ModuleOrder::top(v.twists().to_vec());
    let mut engine = Engine::new(&order);
    for d in divisors {
        let mut dv = d.to_vector(&order);
        if dv.is_empty() {
            continue;
        }
        let inv = dv[0].1.inv();
        scale_vector(&mut dv, &inv);
        engine.leads.push(dv[0].0);
        engine.by_pos[dv[0].0.pos].push(engine.basis.len());
        engine.basis.push(dv);
    }
    let r = engine.reduce(v.to_vector(&order));
    Ok(FreeModuleElement::from_vector(
        &r,
        0,
        v.twists().to_vec(),
        v.num_vars(),
        v.field(),
    ))
}
