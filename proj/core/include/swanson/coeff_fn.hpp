#pragma once

#include <functional>
#include <utility>

#include "swanson/jet.hpp"

namespace swanson {

/// A smooth scalar coefficient function, evaluated as a jet of any requested
/// order at a point.
class CoeffFn {
public:
    using Evaluator = std::function<Jet(double x, int order)>;

    CoeffFn() : eval_([](double, int order) { return Jet(0.0, order); }) {}
    explicit CoeffFn(Evaluator eval) : eval_(std::move(eval)) {}

    static CoeffFn constant(double c) {
        return CoeffFn([c](double, int order) { return Jet(c, order); });
    }

    /// Wraps a generic callable f(const Jet&) -> Jet by seeding the variable.
    template <class F>
    static CoeffFn from_generic(F f) {
        return CoeffFn([f = std::move(f)](double x, int order) {
            return f(Jet::variable(x, order)).truncated(order);
        });
    }

    Jet operator()(double x, int order) const { return eval_(x, order); }
    double value(double x) const { return eval_(x, 0).value(); }

private:
    Evaluator eval_;
};

} // namespace swanson
