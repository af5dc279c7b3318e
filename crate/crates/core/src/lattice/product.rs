use super::FiniteLattice;

/// Pairs ordered componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product<A, B> {
    pub first: A,
    pub second: B,
}

pub fn product_lattice<A: FiniteLattice, B: FiniteLattice>(first: A, second: B) -> Product<A, B> {
    Product { first, second }
}

impl<A: FiniteLattice, B: FiniteLattice> FiniteLattice for Product<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn name(&self) -> String {
        format!("{} × {}", self.first.name(), self.second.name())
    }

    fn cardinality(&self) -> u128 {
        self.first.cardinality().saturating_mul(self.second.cardinality())
    }

    fn elements(&self) -> Vec<Self::Elem> {
        let bs = self.second.elements();
        self.first
            .elements()
            .into_iter()
            .flat_map(|a| bs.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.first.leq(&x.0, &y.0) && self.second.leq(&x.1, &y.1)
    }

    fn meet_all(&self, xs: &[Self::Elem]) -> Self::Elem {
        let (a, b): (Vec<_>, Vec<_>) = xs.iter().cloned().unzip();
        (self.first.meet_all(&a), self.second.meet_all(&b))
    }

    fn join_all(&self, xs: &[Self::Elem]) -> Self::Elem {
        let (a, b): (Vec<_>, Vec<_>) = xs.iter().cloned().unzip();
        (self.first.join_all(&a), self.second.join_all(&b))
    }

    fn top(&self) -> Self::Elem {
        (self.first.top(), self.second.top())
    }

    fn bottom(&self) -> Self::Elem {
        (self.first.bottom(), self.second.bottom())
    }

    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.first.meet(&x.0, &y.0), self.second.meet(&x.1, &y.1))
    }

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.first.join(&x.0, &y.0), self.second.join(&x.1, &y.1))
    }

    fn render(&self, x: &Self::Elem) -> String {
        format!("({}, {})", self.first.render(&x.0), self.second.render(&x.1))
    }
}
