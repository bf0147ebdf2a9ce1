#pragma once

#include <string>
#include <string_view>

#include "mocklab/series.hpp"

namespace mocklab::qseries {

/// Text form:
///   ORDER <num>/<den> LATTICE <D>
///   <coeff_num>/<coeff_den> <exp_num>/<exp_den>     (one line per term, ascending exponent)
std::string to_text(const TruncatedSeries& s);
TruncatedSeries from_text(std::string_view text);

/// JSON form: {"order":[num,den],"lattice":D,"terms":[[en,ed,cn,cd],...]}.
/// Integers that do not fit in 64 bits are written as decimal strings.
std::string to_json(const TruncatedSeries& s);
TruncatedSeries from_json(std::string_view text);

}  // namespace mocklab::qseries
