#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "somimpute/data.hpp"
#include "somimpute/evaluation.hpp"
#include "somimpute/imputation.hpp"
#include "somimpute/superclass.hpp"
#include "somimpute/trainer.hpp"

namespace somimpute {

/// label,unit,grid_row,grid_col,sq_distance,status[,superclass]
/// status is "train", "supplementary" or "unclassifiable"; unit fields are empty for the latter.
void write_assignment_csv(std::ostream& out, const DataMatrix& data, const Assignment& assignment,
                          const GridTopology& topology, const std::vector<bool>& supplementary = {},
                          const SuperClassing* superclasses = nullptr);

/// row,label,column,estimate,units,seeds,source; one line per originally missing cell,
/// including unresolved ones (empty estimate, source "unresolved"). Units and seeds are
/// ';'-separated. Estimates are mapped back through `scaling` when given.
void write_provenance_csv(std::ostream& out, const ImputationReport& report,
                          const std::optional<StandardizationParams>& scaling);

/// d,n_cells,rmse_som,rmse_mean,n_unresolved
void write_eval_csv(std::ostream& out, const EvalReport& report);

/// step,left,right,height
void write_dendrogram_csv(std::ostream& out, const std::vector<Merge>& dendrogram);

/// Square matrix with column names; undefined pairs are written as "NA".
void write_correlation_csv(std::ostream& out, const CorrelationMatrix& corr, const std::vector<std::string>& names);

}  // namespace somimpute
