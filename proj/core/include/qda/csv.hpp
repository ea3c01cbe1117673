#pragma once

#include <string>

#include "qda/dataset.hpp"

namespace qda {

// Dataset CSV: header "f0,f1,...,f{D-1},label", one sample per row, label
// column empty for target rows, UTF-8, LF line endings, '.' decimal point.
void write_dataset_csv(const std::string& path, const Dataset& data);

// Truth sidecar: header "index,label".
void write_truth_csv(const std::string& path, const Eigen::VectorXi& labels);

Dataset read_dataset_csv(const std::string& path);
Eigen::VectorXi read_truth_csv(const std::string& path);

}  // namespace qda
