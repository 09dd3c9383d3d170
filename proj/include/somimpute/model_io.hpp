#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "somimpute/data.hpp"
#include "somimpute/metric.hpp"
#include "somimpute/trainer.hpp"

namespace somimpute {

/// A trained map together with how it was produced and the scaling of its input space.
struct SomModel {
    CodeBook codebook;
    std::optional<StandardizationParams> scaling;  ///< absent when trained on raw data
    TrainingSchedule schedule;
    TrainingMode mode = TrainingMode::IncludeIncomplete;
};

/// Text model file, tab separated:
///
///     rows  cols  p  name_1 ... name_p
///     c_0,0 ... c_0,p-1             (one line per unit, 17 significant digits)
///     ...
///     schedule  iters=..  alpha0=..  alpha_final=..  radius0=..  zero_fraction=..  seed=..  mode=..
///     mean  m_1 ... m_p              (only when scaling is present)
///     std   s_1 ... s_p
void save_model(std::ostream& out, const SomModel& model);
void save_model(const std::filesystem::path& path, const SomModel& model);
SomModel load_model(std::istream& in);
SomModel load_model(const std::filesystem::path& path);

}  // namespace somimpute
