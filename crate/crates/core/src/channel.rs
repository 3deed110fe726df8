//! Channels: functions into distributions, composed by averaging.

use std::sync::Arc;

use crate::dist::Dist;

type Kernel<A, B> = Arc<dyn Fn(&A) -> Dist<B> + Send + Sync>;

pub struct Channel<A, B: Ord> {
    f: Kernel<A, B>,
}

impl<A, B: Ord> Clone for Channel<A, B> {
    fn clone(&self) -> Self {
        Channel { f: self.f.clone() }
    }
}

impl<A: Ord + Clone + 'static, B: Ord + Clone + 'static> Channel<A, B> {
    pub fn new(f: impl Fn(&A) -> Dist<B> + Send + Sync + 'static) -> Self {
        Channel { f: Arc::new(f) }
    }

    /// A deterministic channel.
    pub fn from_fn(f: impl Fn(&A) -> B + Send + Sync + 'static) -> Self {
        Channel::new(move |a| Dist::unit(f(a)))
    }

    pub fn apply(&self, a: &A) -> Dist<B> {
        (self.f)(a)
    }

    /// Kleisli pushforward of a distribution.
    pub fn push(&self, w: &Dist<A>) -> Dist<B> {
        w.bind(|a| self.apply(a))
    }

    /// `next ∘ self`.
    pub fn then<C: Ord + Clone + 'static>(&self, next: &Channel<B, C>) -> Channel<A, C> {
        let first = self.clone();
        let next = next.clone();
        Channel::new(move |a| next.push(&first.apply(a)))
    }
}

impl<A: Ord + Clone + 'static> Channel<A, A> {
    pub fn identity() -> Self {
        Channel::new(|a: &A| Dist::unit(a.clone()))
    }

    /// `n`-fold composite.
    pub fn iterate(&self, n: usize) -> Self {
        (0..n).fold(Channel::identity(), |acc, _| acc.then(self))
    }
}
