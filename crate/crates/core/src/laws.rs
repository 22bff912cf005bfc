//! Exhaustive law scanning.
//!
//! A [`Law`] is a predicate over a finite box of index tuples. Checkers build a
//! list of laws and [`scan`] walks each box in lexicographic order (first
//! coordinate major), stopping at the first tuple where the predicate fails.
//! Because the predicate is kept, a reported witness can be re-evaluated later
//! with [`holds_at`].

use std::cell::Cell;

thread_local! {
    static SCANNED: Cell<u64> = const { Cell::new(0) };
}

type Tuples<'a> = Box<dyn Iterator<Item = Vec<usize>> + 'a>;
type Pred<'a> = Box<dyn Fn(&[usize]) -> bool + 'a>;

enum Domain<'a> {
    Box(Vec<usize>),
    /// A sparse domain: an enumeration in scan order plus a membership test.
    Listed {
        tuples: Box<dyn Fn() -> Tuples<'a> + 'a>,
        member: Pred<'a>,
    },
}

pub(crate) struct Law<'a> {
    pub tag: &'static str,
    domain: Domain<'a>,
    holds: Pred<'a>,
}

impl<'a> Law<'a> {
    pub fn new(tag: &'static str, dims: Vec<usize>, holds: impl Fn(&[usize]) -> bool + 'a) -> Self {
        Law { tag, domain: Domain::Box(dims), holds: Box::new(holds) }
    }

    /// A law over an explicitly enumerated set of tuples, such as composable pairs.
    pub fn over<I>(
        tag: &'static str,
        tuples: impl Fn() -> I + 'a,
        member: impl Fn(&[usize]) -> bool + 'a,
        holds: impl Fn(&[usize]) -> bool + 'a,
    ) -> Self
    where
        I: Iterator<Item = Vec<usize>> + 'a,
    {
        let tuples = Box::new(move || Box::new(tuples()) as Tuples<'a>);
        Law { tag, domain: Domain::Listed { tuples, member: Box::new(member) }, holds: Box::new(holds) }
    }

    pub fn holds(&self, tuple: &[usize]) -> bool {
        (self.holds)(tuple)
    }
}

/// First failing tuple of a law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub tag: &'static str,
    pub witness: Vec<usize>,
}

/// Scan laws in order; returns the number of tuples evaluated.
pub(crate) fn scan(laws: &[Law<'_>]) -> Result<u64, Violation> {
    let mut total = 0u64;
    for law in laws {
        match &law.domain {
            Domain::Box(dims) => {
                let mut tuple = vec![0usize; dims.len()];
                if dims.contains(&0) {
                    continue;
                }
                loop {
                    total += 1;
                    if !law.holds(&tuple) {
                        record(total);
                        return Err(Violation { tag: law.tag, witness: tuple });
                    }
                    if !advance(&mut tuple, dims) {
                        break;
                    }
                }
            }
            Domain::Listed { tuples, .. } => {
                for tuple in tuples() {
                    total += 1;
                    if !law.holds(&tuple) {
                        record(total);
                        return Err(Violation { tag: law.tag, witness: tuple });
                    }
                }
            }
        }
    }
    record(total);
    Ok(total)
}

/// Re-evaluate the law named `tag` at `witness`. `None` if no such law exists
/// or the witness lies outside its domain.
pub(crate) fn holds_at(laws: &[Law<'_>], tag: &str, witness: &[usize]) -> Option<bool> {
    let law = laws.iter().find(|l| l.tag == tag)?;
    let inside = match &law.domain {
        Domain::Box(dims) => witness.len() == dims.len() && witness.iter().zip(dims).all(|(w, d)| w < d),
        Domain::Listed { member, .. } => member(witness),
    };
    inside.then(|| law.holds(witness))
}

fn advance(tuple: &mut [usize], dims: &[usize]) -> bool {
    for i in (0..tuple.len()).rev() {
        tuple[i] += 1;
        if tuple[i] < dims[i] {
            return true;
        }
        tuple[i] = 0;
    }
    false
}

fn record(n: u64) {
    SCANNED.with(|c| c.set(c.get() + n));
}

/// Run `f` and also return how many law instances it evaluated on this thread.
pub fn count_checks<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let before = SCANNED.with(|c| c.get());
    let out = f();
    let after = SCANNED.with(|c| c.get());
    (out, after - before)
}

/// Errors that carry an axiom tag and a witness tuple of element indices.
pub trait Witnessed {
    fn tag(&self) -> String;
    fn witness(&self) -> Vec<usize>;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_is_lexicographic() {
        let laws = [Law::new("x", vec![3, 3], |t| !(t[0] >= 1 && t[1] >= 1))];
        let v = scan(&laws).unwrap_err();
        assert_eq!(v.witness, vec![1, 1]);
        assert_eq!(holds_at(&laws, "x", &[1, 1]), Some(false));
        assert_eq!(holds_at(&laws, "x", &[0, 2]), Some(true));
        assert_eq!(holds_at(&laws, "x", &[3, 0]), None);
        assert_eq!(holds_at(&laws, "y", &[0, 0]), None);
    }

    #[test]
    fn counts_instances() {
        let laws = [Law::new("a", vec![2, 5], |_| true), Law::new("b", vec![4], |_| true)];
        let (r, n) = count_checks(|| scan(&laws));
        assert_eq!(r, Ok(14));
        assert_eq!(n, 14);
    }

    #[test]
    fn empty_box_is_vacuous() {
        let laws = [Law::new("a", vec![0, 5], |_| false)];
        assert_eq!(scan(&laws), Ok(0));
    }

    #[test]
    fn listed_domain_scans_in_given_order() {
        let laws =
            [Law::over("even", || (0..10).filter(|x| x % 2 == 0).map(|x| vec![x]), |t| t[0] % 2 == 0, |t| t[0] < 6)];
        assert_eq!(scan(&laws).unwrap_err().witness, vec![6]);
        assert_eq!(holds_at(&laws, "even", &[3]), None);
        assert_eq!(holds_at(&laws, "even", &[8]), Some(false));
    }
}
