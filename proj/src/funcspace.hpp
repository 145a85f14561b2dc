#pragma once

#include "product.hpp"

namespace msh {

// The simplicial set of pointed functions from an (arity+1)-point pointed set
// into y: a q-simplex is a vector of arity values in y_q (the basepoint's
// value is implicit), with pointwise faces and degeneracies.  Materialized up
// to level qmax.  Unlike a smash product, basepoint values do not collapse
// anything: the census is exactly |y_q|^arity per level.
class function_space {
  public:
    space y;
    size_t arity = 0;
    space total;
    int qmax = 0;

    simplex classify(const std::vector<simplex> &values, int q) const;
    std::vector<simplex> values_of(const simplex &x, int q) const;

  private:
    friend function_space make_function_space(const space &y, size_t arity, int qmax);
    std::map<std::vector<simplex>, uint32_t, tuple_order> gen_of_;
    std::vector<std::vector<simplex>> vals_of_;
};

function_space make_function_space(const space &y, size_t arity, int qmax);

} // namespace msh
