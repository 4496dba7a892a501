//! Natural-number codes for closed `U0` types.

use std::rc::Rc;

use prtt_core::{instantiate, Context, Natural, Term};
use prtt_nbe::Nbe;

use crate::pairing::{pair, unpair};
use crate::ExtractError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Card {
    Finite(u64),
    Infinite,
}

impl Card {
    fn plus(self, other: Card) -> Card {
        match (self, other) {
            (Card::Finite(a), Card::Finite(b)) => Card::Finite(a + b),
            _ => Card::Infinite,
        }
    }
}

#[derive(Debug, Clone)]
enum Shape {
    Nat,
    Unit,
    Empty,
    Sum(Box<Encoding>, Box<Encoding>),
    /// First component and the family body, which binds the first component.
    Sigma(Box<Encoding>, Rc<Term>),
    Eq(Option<Term>),
}

/// How values of a closed type are written as naturals: identity on `Nat`,
/// `0` for the unit and for reflexivity, even/odd for sums and Cantor pairs
/// for Σ. Decoding is totalized with a default inhabitant.
#[derive(Debug, Clone)]
pub struct Encoding {
    pub ty: Term,
    shape: Shape,
}

fn normal_type(t: &Term) -> Result<Term, ExtractError> {
    let nbe = Nbe::new(prtt_nbe::DEFAULT_STEP_BUDGET);
    Ok(nbe.normalize(&Context::new(), t, &Term::Univ(prtt_core::Level::new(8).expect("top level")))?)
}

pub fn encode_type(ty: &Term) -> Result<Encoding, ExtractError> {
    if !ty.is_closed() {
        return Err(ExtractError::NotGroundType(ty.clone()));
    }
    let ty = normal_type(ty)?;
    let shape = match &ty {
        Term::Nat => Shape::Nat,
        Term::Unit => Shape::Unit,
        Term::Empty => Shape::Empty,
        Term::Sum(a, b) => Shape::Sum(Box::new(encode_type(a)?), Box::new(encode_type(b)?)),
        Term::Sigma(a, b) => Shape::Sigma(Box::new(encode_type(a)?), b.clone()),
        Term::Eq(_, x, y) => Shape::Eq((x == y).then(|| Term::refl((**x).clone()))),
        Term::Pi(..) | Term::Univ(_) => return Err(ExtractError::NotLevelZero(ty.clone())),
        _ => return Err(ExtractError::NotGroundType(ty.clone())),
    };
    Ok(Encoding { ty, shape })
}

impl Encoding {
    fn family(&self, b: &Term, a: &Term) -> Result<Encoding, ExtractError> {
        encode_type(&instantiate(b, a))
    }

    pub fn card(&self) -> Result<Card, ExtractError> {
        Ok(match &self.shape {
            Shape::Nat => Card::Infinite,
            Shape::Unit => Card::Finite(1),
            Shape::Empty => Card::Finite(0),
            Shape::Eq(w) => Card::Finite(w.is_some() as u64),
            Shape::Sum(a, b) => a.card()?.plus(b.card()?),
            Shape::Sigma(a, b) => {
                if !b.mentions(0) {
                    return Ok(match (a.card()?, self.family(b, &Term::Star)?.card()?) {
                        (Card::Finite(0), _) | (_, Card::Finite(0)) => Card::Finite(0),
                        (Card::Finite(x), Card::Finite(y)) => Card::Finite(x * y),
                        _ => Card::Infinite,
                    });
                }
                match a.values()? {
                    Some(vs) => {
                        let mut total = Card::Finite(0);
                        for v in vs {
                            total = total.plus(self.family(b, &v)?.card()?);
                        }
                        total
                    }
                    None => Card::Infinite,
                }
            }
        })
    }

    /// All values, when there are finitely many.
    pub fn values(&self) -> Result<Option<Vec<Term>>, ExtractError> {
        Ok(Some(match &self.shape {
            Shape::Nat => return Ok(None),
            Shape::Unit => vec![Term::Star],
            Shape::Empty => vec![],
            Shape::Eq(w) => w.iter().cloned().collect(),
            Shape::Sum(a, b) => {
                let (Some(xs), Some(ys)) = (a.values()?, b.values()?) else { return Ok(None) };
                xs.into_iter().map(Term::inl).chain(ys.into_iter().map(Term::inr)).collect()
            }
            Shape::Sigma(a, b) => {
                let Some(xs) = a.values()? else { return Ok(None) };
                let mut out = vec![];
                for x in xs {
                    let Some(ys) = self.family(b, &x)?.values()? else { return Ok(None) };
                    out.extend(ys.into_iter().map(|y| Term::pair(x.clone(), y)));
                }
                out
            }
        }))
    }

    pub fn enc(&self, v: &Term) -> Result<Natural, ExtractError> {
        let bad = || ExtractError::NotAValue(v.clone(), self.ty.clone());
        Ok(match (&self.shape, v) {
            (Shape::Nat, _) => prtt_nbe::canonical_nat(v).map_err(|_| bad())?,
            (Shape::Unit, Term::Star) | (Shape::Eq(Some(_)), Term::Refl(_)) => Natural::ZERO,
            (Shape::Sum(a, _), Term::Inl(x)) => {
                let c = a.enc(x)?;
                c.add(&c)
            }
            (Shape::Sum(_, b), Term::Inr(y)) => {
                let c = b.enc(y)?;
                c.add(&c).succ()
            }
            (Shape::Sigma(a, b), Term::Pair(x, y)) => pair(&a.enc(x)?, &self.family(b, x)?.enc(y)?),
            _ => return Err(bad()),
        })
    }

    /// Decode, falling back to a default inhabitant for codes outside the
    /// image. `None` only for empty types.
    pub fn dec(&self, code: &Natural) -> Result<Option<Term>, ExtractError> {
        let exact = match &self.shape {
            Shape::Nat => code.to_u64().map(Term::numeral),
            Shape::Unit => Some(Term::Star),
            Shape::Empty => None,
            Shape::Eq(w) => w.clone(),
            Shape::Sum(a, b) => {
                let big = code.to_biguint();
                let half = Natural::from(&big >> 1u32);
                if big.bit(0) {
                    b.dec(&half)?.map(Term::inr)
                } else {
                    a.dec(&half)?.map(Term::inl)
                }
            }
            Shape::Sigma(a, b) => {
                let (x, y) = unpair(code);
                match a.dec(&x)? {
                    Some(x) => self.family(b, &x)?.dec(&y)?.map(|y| Term::pair(x, y)),
                    None => None,
                }
            }
        };
        match exact {
            Some(t) => Ok(Some(t)),
            None => self.default_value(),
        }
    }

    /// Some inhabitant, if the type has one. Dependent Σ-types are searched
    /// over the first 64 first components.
    pub fn default_value(&self) -> Result<Option<Term>, ExtractError> {
        Ok(match &self.shape {
            Shape::Nat => Some(Term::Zero),
            Shape::Unit => Some(Term::Star),
            Shape::Empty => None,
            Shape::Eq(w) => w.clone(),
            Shape::Sum(a, b) => match a.default_value()? {
                Some(x) => Some(Term::inl(x)),
                None => b.default_value()?.map(Term::inr),
            },
            Shape::Sigma(a, b) => {
                for code in 0..64u64 {
                    let Some(x) = a.dec(&Natural::from(code))? else { return Ok(None) };
                    if let Some(y) = self.family(b, &x)?.default_value()? {
                        return Ok(Some(Term::pair(x, y)));
                    }
                }
                None
            }
        })
    }
}
