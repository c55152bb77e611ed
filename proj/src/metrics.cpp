#include "icnsim/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace icnsim {

std::optional<std::size_t> MetricsSeries::node_index(
    const std::string& label) const {
  for (std::size_t i = 0; i < node_labels.size(); ++i) {
    if (node_labels[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t MetricsSeries::sample_of(double t_s) const {
  if (t_s <= 0) return 0;
  auto k = static_cast<std::size_t>(std::ceil(t_s / bucket_s)) - 1;
  return std::min(k, n_samples == 0 ? 0 : n_samples - 1);
}

namespace {

std::string format_value(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

void write_family(const std::string& dir, const std::string& file,
                  const std::string& metric,
                  const std::vector<std::string>& labels,
                  const std::vector<std::vector<double>>& rows,
                  double bucket_s) {
  std::ofstream out(dir + "/" + file, std::ios::binary);
  if (!out) throw std::runtime_error("export_csv: cannot write " + file);
  out << "time_s,node,metric,value\n";
  if (rows.empty()) return;
  std::size_t n = rows.empty() ? 0 : rows[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    double t = static_cast<double>(k + 1) * bucket_s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << format_value(t) << ',' << labels[i] << ',' << metric << ','
          << format_value(rows[i][k]) << '\n';
    }
  }
}

struct Row {
  double time;
  std::string node;
  std::string metric;
  double value;
};

std::vector<Row> read_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_csv: cannot read " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    Row r;
    std::string field;
    std::getline(ss, field, ',');
    r.time = std::stod(field);
    std::getline(ss, r.node, ',');
    std::getline(ss, r.metric, ',');
    std::getline(ss, field, ',');
    r.value = std::stod(field);
    rows.push_back(std::move(r));
  }
  return rows;
}

void load_family(const std::string& dir, const std::string& file,
                 const std::vector<std::string>& labels,
                 std::vector<std::vector<double>>& rows, double bucket_s,
                 std::size_t n_samples) {
  rows.assign(labels.size(), std::vector<double>(n_samples, 0));
  for (const Row& r : read_family(dir + "/" + file)) {
    auto it = std::find(labels.begin(), labels.end(), r.node);
    if (it == labels.end()) continue;
    auto k = static_cast<std::size_t>(std::lround(r.time / bucket_s)) - 1;
    rows[static_cast<std::size_t>(it - labels.begin())][k] = r.value;
  }
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  double m = mean_of(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

void export_csv(const MetricsSeries& s, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_family(dir, "pit.csv", "pit_size", s.node_labels, s.pit_size,
               s.bucket_s);
  write_family(dir, "retransmits.csv", "interest_retransmits", s.node_labels,
               s.retransmits, s.bucket_s);
  write_family(dir, "expiries.csv", "pit_expiries", s.node_labels,
               s.pit_expiries, s.bucket_s);
  write_family(dir, "cpu.csv", "cpu_utilization", s.node_labels, s.cpu_util,
               s.bucket_s);
  write_family(dir, "memory.csv", "memory_bytes", s.node_labels,
               s.memory_bytes, s.bucket_s);
  write_family(dir, "goodput.csv", "goodput_bits", s.node_labels,
               s.goodput_bits, s.bucket_s);
  write_family(dir, "link.csv", "link_bits", s.link_labels, s.link_bits,
               s.bucket_s);
  {
    std::ofstream out(dir + "/drops.csv", std::ios::binary);
    if (!out) throw std::runtime_error("export_csv: cannot write drops.csv");
    out << "time_s,node,metric,value\n";
    for (const auto& [reason, rows] : s.drops) {
      std::size_t n = rows.empty() ? 0 : rows[0].size();
      for (std::size_t k = 0; k < n; ++k) {
        double t = static_cast<double>(k + 1) * s.bucket_s;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          out << format_value(t) << ',' << s.node_labels[i] << ",drop_"
              << reason << ',' << format_value(rows[i][k]) << '\n';
        }
      }
    }
  }
  {
    std::ofstream out(dir + "/files.csv", std::ios::binary);
    if (!out) throw std::runtime_error("export_csv: cannot write files.csv");
    out << "file_id,start_s,stop_s\n";
    for (const auto& f : s.files) {
      out << f.id << ',' << format_value(f.start_s) << ','
          << format_value(f.stop_s) << '\n';
    }
  }
  {
    std::ofstream out(dir + "/meta.csv", std::ios::binary);
    if (!out) throw std::runtime_error("export_csv: cannot write meta.csv");
    out << "key,value\n";
    out << "bucket_s," << format_value(s.bucket_s) << '\n';
    out << "n_samples," << s.n_samples << '\n';
    out << "nodes";
    for (const auto& l : s.node_labels) out << ';' << l;
    out << '\n';
    out << "links";
    for (const auto& l : s.link_labels) out << ';' << l;
    out << '\n';
  }
}

MetricsSeries parse_csv(const std::string& dir) {
  MetricsSeries s;
  {
    std::ifstream in(dir + "/meta.csv");
    if (!in) throw std::runtime_error("parse_csv: cannot read meta.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.rfind("bucket_s,", 0) == 0) {
        s.bucket_s = std::stod(line.substr(9));
      } else if (line.rfind("n_samples,", 0) == 0) {
        s.n_samples = std::stoul(line.substr(10));
      } else if (line.rfind("nodes", 0) == 0 || line.rfind("links", 0) == 0) {
        auto& dst = line.rfind("nodes", 0) == 0 ? s.node_labels : s.link_labels;
        std::size_t pos = line.find(';');
        while (pos != std::string::npos) {
          std::size_t next = line.find(';', pos + 1);
          dst.push_back(line.substr(
              pos + 1, next == std::string::npos ? next : next - pos - 1));
          pos = next;
        }
      }
    }
  }
  load_family(dir, "pit.csv", s.node_labels, s.pit_size, s.bucket_s,
              s.n_samples);
  load_family(dir, "retransmits.csv", s.node_labels, s.retransmits, s.bucket_s,
              s.n_samples);
  load_family(dir, "expiries.csv", s.node_labels, s.pit_expiries, s.bucket_s,
              s.n_samples);
  load_family(dir, "cpu.csv", s.node_labels, s.cpu_util, s.bucket_s,
              s.n_samples);
  load_family(dir, "memory.csv", s.node_labels, s.memory_bytes, s.bucket_s,
              s.n_samples);
  load_family(dir, "goodput.csv", s.node_labels, s.goodput_bits, s.bucket_s,
              s.n_samples);
  load_family(dir, "link.csv", s.link_labels, s.link_bits, s.bucket_s,
              s.n_samples);
  for (const Row& r : read_family(dir + "/drops.csv")) {
    if (r.metric.rfind("drop_", 0) != 0) continue;
    std::string reason = r.metric.substr(5);
    auto& rows = s.drops[reason];
    if (rows.empty()) {
      rows.assign(s.node_labels.size(), std::vector<double>(s.n_samples, 0));
    }
    auto it = std::find(s.node_labels.begin(), s.node_labels.end(), r.node);
    if (it == s.node_labels.end()) continue;
    auto k = static_cast<std::size_t>(std::lround(r.time / s.bucket_s)) - 1;
    rows[static_cast<std::size_t>(it - s.node_labels.begin())][k] = r.value;
  }
  {
    std::ifstream in(dir + "/files.csv");
    if (!in) throw std::runtime_error("parse_csv: cannot read files.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ss(line);
      std::string field;
      MetricsSeries::FileStat f;
      std::getline(ss, field, ',');
      f.id = std::stoi(field);
      std::getline(ss, field, ',');
      f.start_s = std::stod(field);
      std::getline(ss, field, ',');
      f.stop_s = std::stod(field);
      s.files.push_back(f);
    }
  }
  return s;
}

RunSummary summarize(const MetricsSeries& s) {
  RunSummary out;
  double duration = static_cast<double>(s.n_samples) * s.bucket_s;
  out.active_span_s = duration;
  if (!s.files.empty()) {
    bool all_done = true;
    double last_stop = 0;
    for (const auto& f : s.files) {
      if (f.stop_s < 0) all_done = false;
      last_stop = std::max(last_stop, f.stop_s);
    }
    if (all_done && last_stop > 0) out.active_span_s = last_stop;
  }
  std::size_t active_samples = std::max<std::size_t>(
      1, std::min(s.n_samples,
                  static_cast<std::size_t>(std::ceil(out.active_span_s /
                                                     s.bucket_s))));

  for (std::size_t i = 0; i < s.node_labels.size(); ++i) {
    RunSummary::NodeStats n;
    n.label = s.node_labels[i];
    std::vector<double> active(s.pit_size[i].begin(),
                               s.pit_size[i].begin() +
                                   static_cast<std::ptrdiff_t>(active_samples));
    n.pit_mean = mean_of(active);
    n.pit_std = std_of(active);
    n.pit_peak =
        s.pit_size[i].empty()
            ? 0
            : *std::max_element(s.pit_size[i].begin(), s.pit_size[i].end());
    n.mem_peak = s.memory_bytes[i].empty()
                     ? 0
                     : *std::max_element(s.memory_bytes[i].begin(),
                                         s.memory_bytes[i].end());
    n.retransmit_total =
        s.retransmits[i].empty() ? 0 : s.retransmits[i].back();
    n.expiry_total = s.pit_expiries[i].empty() ? 0 : s.pit_expiries[i].back();
    for (const auto& [reason, rows] : s.drops) {
      double total = rows[i].empty() ? 0 : rows[i].back();
      if (total > 0) n.drop_totals[reason] = total;
    }
    if (n.pit_mean > out.max_pit_mean) {
      out.max_pit_mean = n.pit_mean;
      out.max_pit_std = n.pit_std;
      out.max_pit_node = n.label;
    }
    out.nodes.push_back(std::move(n));
  }

  std::vector<double> completions;
  for (const auto& f : s.files) {
    out.files.started++;
    if (f.stop_s >= 0) {
      out.files.completed++;
      completions.push_back(f.stop_s - f.start_s);
    }
  }
  if (!completions.empty()) {
    out.files.mean_completion_s = mean_of(completions);
    out.files.std_completion_s = std_of(completions);
    out.files.min_completion_s =
        *std::min_element(completions.begin(), completions.end());
    out.files.max_completion_s =
        *std::max_element(completions.begin(), completions.end());
  }

  if (auto idx = s.node_index("consumer")) {
    double total = 0;
    for (double v : s.goodput_bits[*idx]) total += v;
    out.receiver_goodput_bps =
        out.active_span_s > 0 ? total / out.active_span_s : 0;
  }
  return out;
}

void write_summary_text(const RunSummary& summary, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "active_span_s=" << format_value(summary.active_span_s) << '\n';
  out << "receiver_goodput_bps=" << format_value(summary.receiver_goodput_bps)
      << '\n';
  out << "max_pit_node=" << summary.max_pit_node << '\n';
  out << "max_pit_mean=" << format_value(summary.max_pit_mean) << '\n';
  out << "max_pit_std=" << format_value(summary.max_pit_std) << '\n';
  out << "files_started=" << summary.files.started << '\n';
  out << "files_completed=" << summary.files.completed << '\n';
  out << "file_completion_mean_s="
      << format_value(summary.files.mean_completion_s) << '\n';
  out << "file_completion_std_s="
      << format_value(summary.files.std_completion_s) << '\n';
  for (const auto& n : summary.nodes) {
    out << "node." << n.label << ".pit_mean=" << format_value(n.pit_mean)
        << '\n';
    out << "node." << n.label << ".pit_std=" << format_value(n.pit_std)
        << '\n';
    out << "node." << n.label << ".pit_peak=" << format_value(n.pit_peak)
        << '\n';
    out << "node." << n.label << ".mem_peak=" << format_value(n.mem_peak)
        << '\n';
    out << "node." << n.label
        << ".retransmits=" << format_value(n.retransmit_total) << '\n';
    out << "node." << n.label << ".expiries=" << format_value(n.expiry_total)
        << '\n';
    for (const auto& [reason, total] : n.drop_totals) {
      out << "node." << n.label << ".drop." << reason << '='
          << format_value(total) << '\n';
    }
  }
}

}  // namespace icnsim
