use std::fmt;

use crate::field::{RatFunc, Rational};

/// Wire colour: an electric wire carries a (potential, current) pair, an
/// information wire a single field value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Electric,
    Info,
}

impl Sort {
    /// Number of scalar coordinates the wire occupies.
    pub fn width(self) -> usize {
        match self {
            Sort::Electric => 2,
            Sort::Info => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Sort::Electric => 'e',
            Sort::Info => 'n',
        }
    }
}

/// A word over `{Electric, Info}`: the objects of the coloured prop.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SortWord(pub Vec<Sort>);

impl SortWord {
    pub fn empty() -> Self {
        SortWord(Vec::new())
    }

    pub fn single(s: Sort) -> Self {
        SortWord(vec![s])
    }

    pub fn repeat(s: Sort, n: usize) -> Self {
        SortWord(vec![s; n])
    }

    pub fn width(&self) -> usize {
        self.0.iter().map(|s| s.width()).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &SortWord) -> SortWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SortWord(v)
    }

    pub fn sorts(&self) -> &[Sort] {
        &self.0
    }

    pub fn all(&self, s: Sort) -> bool {
        self.0.iter().all(|&t| t == s)
    }

    /// Scalar offset of wire `index` within the word.
    pub fn coord_offset(&self, index: usize) -> usize {
        self.0[..index].iter().map(|s| s.width()).sum()
    }
}

impl fmt::Display for SortWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let s: String = self
            .0
            .iter()
            .map(|s| s.letter().to_ascii_uppercase())
            .collect();
        write!(f, "{s}")
    }
}

impl fmt::Debug for SortWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Vec<Sort>> for SortWord {
    fn from(v: Vec<Sort>) -> Self {
        SortWord(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    // Affine algebra on information wires.
    Copy,
    Discard,
    Scalar(RatFunc),
    Add,
    Zero,
    CoCopy,
    CoDiscard,
    CoScalar(RatFunc),
    CoAdd,
    CoZero,
    One,
    // Basic circuit elements.
    Resistor(Rational),
    VSource(Rational),
    CSource(Rational),
    Inductor(Rational),
    Capacitor(Rational),
    Junction,
    CoJunction,
    /// Counit `E → ε`: an open terminal on the right.
    OpenRight,
    /// Unit `ε → E`: an open terminal on the left.
    OpenLeft,
    // Meters, controlled sources and generalised impedance boxes.
    Voltmeter,
    Ammeter,
    CtrlVSource,
    CtrlCSource,
    ImpedanceBox {
        m: usize,
        n: usize,
        payload: Box<Term>,
    },
}

impl Generator {
    pub fn is_affine_algebra(&self) -> bool {
        use Generator::*;
        matches!(
            self,
            Copy | Discard
                | Scalar(_)
                | Add
                | Zero
                | CoCopy
                | CoDiscard
                | CoScalar(_)
                | CoAdd
                | CoZero
                | One
        )
    }

    /// Resistors, sources, reactive elements, junctions and terminals.
    pub fn is_basic_element(&self) -> bool {
        use Generator::*;
        matches!(
            self,
            Resistor(_)
                | VSource(_)
                | CSource(_)
                | Inductor(_)
                | Capacitor(_)
                | Junction
                | CoJunction
                | OpenRight
                | OpenLeft
        )
    }

    pub fn is_meter_or_controlled(&self) -> bool {
        use Generator::*;
        matches!(self, Voltmeter | Ammeter | CtrlVSource | CtrlCSource)
    }
}

/// Terms of the coloured prop of extended circuits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(Generator),
    Id(SortWord),
    Swap(Sort, Sort),
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
}

impl Term {
    pub fn seq(a: Term, b: Term) -> Term {
        Term::Seq(Box::new(a), Box::new(b))
    }

    pub fn par(a: Term, b: Term) -> Term {
        Term::Par(Box::new(a), Box::new(b))
    }

    /// Left-nested sequential composite; `None` for an empty list.
    pub fn seq_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::seq)
    }

    /// Left-nested parallel composite, dropping empty identities. An empty
    /// list gives the empty identity.
    pub fn par_all(terms: impl IntoIterator<Item = Term>) -> Term {
        terms
            .into_iter()
            .filter(|t| !matches!(t, Term::Id(w) if w.is_empty()))
            .reduce(Term::par)
            .unwrap_or(Term::Id(SortWord::empty()))
    }

    pub fn id(s: Sort) -> Term {
        Term::Id(SortWord::single(s))
    }

    pub fn id_e() -> Term {
        Term::id(Sort::Electric)
    }

    pub fn id_n() -> Term {
        Term::id(Sort::Info)
    }

    pub fn id_word(w: SortWord) -> Term {
        Term::Id(w)
    }

    pub fn resistor(r: Rational) -> Term {
        Term::Gen(Generator::Resistor(r))
    }

    pub fn vsource(v: Rational) -> Term {
        Term::Gen(Generator::VSource(v))
    }

    pub fn csource(i: Rational) -> Term {
        Term::Gen(Generator::CSource(i))
    }

    pub fn inductor(l: Rational) -> Term {
        Term::Gen(Generator::Inductor(l))
    }

    pub fn capacitor(c: Rational) -> Term {
        Term::Gen(Generator::Capacitor(c))
    }

    pub fn scalar(k: RatFunc) -> Term {
        Term::Gen(Generator::Scalar(k))
    }

    pub fn coscalar(k: RatFunc) -> Term {
        Term::Gen(Generator::CoScalar(k))
    }

    /// Impedance box with a `1 → 1` payload.
    pub fn boxed(payload: Term) -> Term {
        Term::Gen(Generator::ImpedanceBox {
            m: 0,
            n: 0,
            payload: Box::new(payload),
        })
    }

    /// Number of generator occurrences, counting box payloads.
    pub fn size(&self) -> usize {
        match self {
            Term::Gen(Generator::ImpedanceBox { payload, .. }) => 1 + payload.size(),
            Term::Gen(_) => 1,
            Term::Id(_) | Term::Swap(..) => 0,
            Term::Seq(a, b) | Term::Par(a, b) => a.size() + b.size(),
        }
    }

    /// Visits every generator occurrence, including those inside boxes.
    pub fn for_each_generator(&self, f: &mut impl FnMut(&Generator)) {
        match self {
            Term::Gen(g) => {
                f(g);
                if let Generator::ImpedanceBox { payload, .. } = g {
                    payload.for_each_generator(f);
                }
            }
            Term::Id(_) | Term::Swap(..) => {}
            Term::Seq(a, b) | Term::Par(a, b) => {
                a.for_each_generator(f);
                b.for_each_generator(f);
            }
        }
    }

    pub fn any_generator(&self, mut pred: impl FnMut(&Generator) -> bool) -> bool {
        let mut hit = false;
        self.for_each_generator(&mut |g| hit |= pred(g));
        hit
    }

    /// True if built only from identities, swaps and composition.
    pub fn is_structural(&self) -> bool {
        match self {
            Term::Gen(_) => false,
            Term::Id(_) | Term::Swap(..) => true,
            Term::Seq(a, b) | Term::Par(a, b) => a.is_structural() && b.is_structural(),
        }
    }
}

macro_rules! nullary {
    ($($name:ident => $g:ident),* $(,)?) => {
        impl Term {
            $(pub fn $name() -> Term { Term::Gen(Generator::$g) })*
        }
    };
}

nullary! {
    copy => Copy,
    discard => Discard,
    add => Add,
    zero => Zero,
    cocopy => CoCopy,
    codiscard => CoDiscard,
    coadd => CoAdd,
    cozero => CoZero,
    one => One,
    junction => Junction,
    cojunction => CoJunction,
    open_right => OpenRight,
    open_left => OpenLeft,
    voltmeter => Voltmeter,
    ammeter => Ammeter,
    ctrl_vsource => CtrlVSource,
    ctrl_csource => CtrlCSource,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::print::pretty_print(self))
    }
}
