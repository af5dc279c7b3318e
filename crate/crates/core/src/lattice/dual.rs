use super::FiniteLattice;

/// The same carrier with order and operations turned around.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dual<L>(pub L);

pub fn dual_lattice<L: FiniteLattice>(lattice: L) -> Dual<L> {
    Dual(lattice)
}

impl<L: FiniteLattice> Dual<L> {
    pub fn inner(&self) -> &L {
        &self.0
    }
}

impl<L: FiniteLattice> FiniteLattice for Dual<L> {
    type Elem = L::Elem;

    fn name(&self) -> String {
        format!("dual({})", self.0.name())
    }

    fn cardinality(&self) -> u128 {
        self.0.cardinality()
    }

    fn elements(&self) -> Vec<L::Elem> {
        self.0.elements()
    }

    fn leq(&self, a: &L::Elem, b: &L::Elem) -> bool {
        self.0.leq(b, a)
    }

    fn meet_all(&self, xs: &[L::Elem]) -> L::Elem {
        self.0.join_all(xs)
    }

    fn join_all(&self, xs: &[L::Elem]) -> L::Elem {
        self.0.meet_all(xs)
    }

    fn top(&self) -> L::Elem {
        self.0.bottom()
    }

    fn bottom(&self) -> L::Elem {
        self.0.top()
    }

    fn meet(&self, a: &L::Elem, b: &L::Elem) -> L::Elem {
        self.0.join(a, b)
    }

    fn join(&self, a: &L::Elem, b: &L::Elem) -> L::Elem {
        self.0.meet(a, b)
    }

    fn render(&self, x: &L::Elem) -> String {
        self.0.render(x)
    }
}
