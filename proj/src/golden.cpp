#include "nsq/golden.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "nsq/expr.hpp"

namespace nsq {

namespace {

nlohmann::json load_json(const std::string& relpath) {
  std::string path = data_dir() + "/" + relpath;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference data file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("NSQ_DATA_DIR"); env && *env) return env;
  return NSQ_DEFAULT_DATA_DIR;
}

Mat load_golden_matrix(const std::string& relpath, ExtPtr ctx) {
  nlohmann::json j = load_json(relpath);
  long rows = j.at("rows").get<long>();
  long cols = j.at("cols").get<long>();
  Mat m(rows, cols);
  for (const auto& entry : j.at("entries")) {
    long i = entry.at(0).get<long>();
    long k = entry.at(1).get<long>();
    if (i < 1 || i > rows || k < 1 || k > cols)
      throw std::runtime_error(relpath + ": entry index out of range");
    m.at(i - 1, k - 1) = parse_scalar(entry.at(2).get<std::string>(), ctx);
  }
  return m;
}

std::map<std::string, Scalar> load_golden_scalars(const std::string& relpath,
                                                  ExtPtr ctx) {
  nlohmann::json j = load_json(relpath);
  std::map<std::string, Scalar> out;
  for (const auto& [key, value] : j.items())
    out[key] = parse_scalar(value.get<std::string>(), ctx);
  return out;
}

std::map<std::string, std::vector<Rat>> load_golden_int_vectors(
    const std::string& relpath) {
  nlohmann::json j = load_json(relpath);
  std::map<std::string, std::vector<Rat>> out;
  for (const auto& [key, value] : j.items()) {
    std::vector<Rat>& row = out[key];
    row.reserve(value.size());
    for (const auto& c : value) row.emplace_back(c.get<long>());
  }
  return out;
}

}  // namespace nsq
