#ifndef CARLAB_POTENTIAL_NORMS_HPP
#define CARLAB_POTENTIAL_NORMS_HPP

#include <map>
#include <stdexcept>

#include "carlab/rational.hpp"

namespace carlab {

/// Norm bounds on the lower-order coefficients: A_alpha bounds the L^inf
/// norm of the order-|alpha| drift, A0 bounds the L^s norm of V_0.
struct PotentialNorms {
    std::map<int, double> A_alpha;  // |alpha| -> bound, |alpha| >= 1
    double A0 = 0.0;
    ExtRat s;

    void validate() const {
        if (A0 < 0.0) throw std::invalid_argument("PotentialNorms: A0 < 0");
        for (const auto& [k, v] : A_alpha) {
            if (k < 1) throw std::invalid_argument("PotentialNorms: drift order < 1");
            if (v < 0.0) throw std::invalid_argument("PotentialNorms: A_alpha < 0");
        }
    }
};

}  // namespace carlab

#endif
