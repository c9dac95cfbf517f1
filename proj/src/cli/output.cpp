#include "oppenheim/cli/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "oppenheim/cli/config.hpp"

namespace oppenheim::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(double x) const { return format_double(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(std::uint64_t x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    }
    std::string operator()(bool b) const { return b ? "1" : "0"; }
  };
  return std::visit(Visitor{}, c);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : path_(path), header_(std::move(header)), os_(path) {
  if (!os_) throw IoError("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < header_.size(); ++i) os_ << (i ? "," : "") << header_[i];
  os_ << '\n' << std::flush;
  if (!os_) throw IoError("write failed: " + path.string());
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != header_.size())
    throw std::logic_error("CSV row width does not match header of " + path_.string());
  for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << format_cell(cells[i]);
  os_ << '\n' << std::flush;
  if (!os_) throw IoError("write failed: " + path_.string());
}

nlohmann::json json_number(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
  if (!os) throw IoError("write failed: " + path.string());
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch != '"') {
        cell += ch;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  out.push_back(std::move(cell));
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(is, line);) rows.push_back(split_csv_line(line));
  return rows;
}

bool is_timing_field(const std::string& name) {
  return name == "elapsed_s" || name == "wall_time_s";
}

namespace {

void strip_timing(nlohmann::json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end();) {
      if (is_timing_field(it.key())) {
        it = j.erase(it);
      } else {
        strip_timing(*it);
        ++it;
      }
    }
  } else if (j.is_array()) {
    for (auto& x : j) strip_timing(x);
  }
}

}  // namespace

std::string reproducible_digest(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::ostringstream os;
  for (const auto& f : files) {
    os << "## " << f.filename().string() << "\n";
    if (f.extension() == ".csv") {
      const auto rows = read_csv(f);
      if (rows.empty()) continue;
      std::vector<bool> keep;
      for (const auto& h : rows.front()) keep.push_back(!is_timing_field(h));
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
          if (i >= keep.size() || keep[i]) os << r[i] << ",";
        os << "\n";
      }
    } else if (f.extension() == ".json") {
      std::ifstream is(f);
      nlohmann::json j;
      try {
        is >> j;
      } catch (const nlohmann::json::exception& e) {
        throw IoError("cannot parse " + f.string() + ": " + e.what());
      }
      strip_timing(j);
      if (j.contains("config")) {
        j["config"].erase("out");
        j["config"].erase("workers");
      }
      os << j.dump() << "\n";
    }
  }
  return os.str();
}

}  // namespace oppenheim::cli
