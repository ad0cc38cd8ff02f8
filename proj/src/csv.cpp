#include "moran/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace moran {

std::string format_real(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("format_real failed");
  return std::string(buf, res.ptr);
}

std::string trajectory_csv(const std::vector<TrajectoryRecord>& records) {
  std::string out = "time,mean_fitness,c2,c3,c4,k_c,k_d,k_w,min_class,max_class\n";
  for (const auto& r : records) {
    out += format_real(r.time);
    out += ',';
    out += format_real(r.mean_fitness);
    out += ',';
    out += format_real(r.c2);
    out += ',';
    out += format_real(r.c3);
    out += ',';
    out += format_real(r.c4);
    out += ',';
    if (r.k_c) out += std::to_string(*r.k_c);
    out += ',';
    if (r.k_d) out += std::to_string(*r.k_d);
    out += ',';
    out += std::to_string(r.k_w);
    out += ',';
    out += std::to_string(r.min_class);
    out += ',';
    out += std::to_string(r.max_class);
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::string out = "N,mu,q,s,replicate,seed,adaptation_rate,rate_sd,mean_c2\n";
  for (const auto& c : cells) {
    out += std::to_string(c.params.pop_size);
    out += ',';
    out += format_real(c.params.mu);
    out += ',';
    out += format_real(c.params.q);
    out += ',';
    out += format_real(c.params.s);
    out += ',';
    out += std::to_string(c.replicate);
    out += ',';
    out += std::to_string(c.seed);
    out += ',';
    if (c.ok) {
      out += format_real(c.adaptation_rate);
      out += ',';
      out += format_real(c.rate_se);
      out += ',';
      out += format_real(c.mean_c2);
    } else {
      out += ",,";
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  for (char ch : text) {
    if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else {
      field += ch;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace moran
