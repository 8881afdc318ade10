#pragma once

#include "gapcert/interval.hpp"

namespace gapcert {

enum class Accumulation { Double, DoubleDouble };

struct AirySeriesConfig {
    int max_terms = 240;
    double domain_radius = 8.0;
    Accumulation accumulation_precision = Accumulation::DoubleDouble;
};

// Reversed Airy function A(x) = Ai(-x) and its derivative A'(x) = -Ai'(-x).
struct AiryPair {
    Interval value;
    Interval derivative;
};

Interval airy_ai_zero();        // Ai(0)
Interval airy_minus_aip_zero();  // -Ai'(0)

// precision_loss, when given, is set when the result is wider than 1e-6.
Interval eval_A(const Interval& x, const AirySeriesConfig& cfg = {}, bool* precision_loss = nullptr);
Interval eval_A_prime(const Interval& x, const AirySeriesConfig& cfg = {}, bool* precision_loss = nullptr);
AiryPair eval_A_pair(const Interval& x, const AirySeriesConfig& cfg = {});

// Second derivative from the term-wise differentiated series (point arguments)
// or from the Taylor form (interval arguments).
Interval eval_A_second(const Interval& x, const AirySeriesConfig& cfg = {});

}  // namespace gapcert
