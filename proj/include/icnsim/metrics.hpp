#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icnsim/router.hpp"
#include "icnsim/time.hpp"

namespace icnsim {

// Per-run time series, sampled on a fixed bucket grid (default 100 ms).
// Sampled quantities are taken at bucket starts; accumulated quantities
// (cpu busy, goodput, link bits, memory peak) cover [k*b, (k+1)*b).
struct MetricsSeries {
  double bucket_s = 0.1;
  std::size_t n_samples = 0;
  std::vector<std::string> node_labels;
  std::vector<std::string> link_labels;  // one per direction

  // [node][sample]
  std::vector<std::vector<double>> pit_size;        // sampled
  std::vector<std::vector<double>> retransmits;     // cumulative
  std::vector<std::vector<double>> pit_expiries;    // cumulative
  std::vector<std::vector<double>> cpu_util;        // busy fraction per bucket
  std::vector<std::vector<double>> memory_bytes;    // peak per bucket
  std::vector<std::vector<double>> goodput_bits;    // delivered payload per bucket
  std::map<std::string, std::vector<std::vector<double>>> drops;  // cumulative

  // [link dir][sample]
  std::vector<std::vector<double>> link_bits;  // transmitted per bucket

  struct FileStat {
    int id = 0;
    double start_s = -1;
    double stop_s = -1;  // negative: never completed
  };
  std::vector<FileStat> files;

  double time_of(std::size_t sample) const { return sample * bucket_s; }
  std::optional<std::size_t> node_index(const std::string& label) const;
  std::size_t sample_of(double t_s) const;
};

struct RunSummary {
  struct NodeStats {
    std::string label;
    double pit_mean = 0;
    double pit_std = 0;
    double pit_peak = 0;
    double mem_peak = 0;
    double retransmit_total = 0;
    double expiry_total = 0;
    std::map<std::string, double> drop_totals;
    bool operator==(const NodeStats&) const = default;
  };
  std::vector<NodeStats> nodes;

  struct FileStats {
    std::size_t started = 0;
    std::size_t completed = 0;
    double mean_completion_s = 0;
    double std_completion_s = 0;
    double min_completion_s = 0;
    double max_completion_s = 0;
    bool operator==(const FileStats&) const = default;
  };
  FileStats files;

  // Receiver-side delivered payload rate over the active span (first request
  // to last completion when the workload finishes early, else the full run),
  // and the pairing of state load vs performance: the per-node mean/std of
  // PIT size at the maximally loaded hop against mean goodput.
  double active_span_s = 0;
  double receiver_goodput_bps = 0;
  std::string max_pit_node;
  double max_pit_mean = 0;
  double max_pit_std = 0;

  bool operator==(const RunSummary&) const = default;
};

// Writes one CSV per metric family into `dir` (schema: time_s,node,metric,
// value) plus files.csv; byte-identical across runs with equal seed.
void export_csv(const MetricsSeries& series, const std::string& dir);

// Reads back what export_csv wrote.
MetricsSeries parse_csv(const std::string& dir);

RunSummary summarize(const MetricsSeries& series);

void write_summary_text(const RunSummary& summary, const std::string& path);

}  // namespace icnsim
