#pragma once

#include <string>
#include <vector>

#include "mocklab/congruence.hpp"
#include "mocklab/mock_family.hpp"
#include "mocklab/numerics.hpp"

namespace mocklab::report {

// Each returns a single JSON document (no trailing newline).

std::string to_json(const mock::ShadowParams& p);
std::string to_json(const mock::CoefficientRecord& rec);
std::string to_json(const congruence::WitnessReport& r);
std::string to_json(const congruence::CongruenceResult& r);
std::string to_json(const congruence::PartitionCongruenceReport& r);
std::string to_json(const congruence::PsiLemmaReport& r);
std::string to_json(const std::vector<numerics::NumericCheck>& checks);

}  // namespace mocklab::report
