#include "mgof/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "mgof/errors.hpp"

namespace mgof {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_count(std::string_view token) {
  token = trim(token);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
    fail(ErrorKind::InvalidArgument, "malformed count '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::vector<std::int64_t> parse_counts(std::string_view text) {
  const auto body = trim(text);
  if (body.empty()) fail(ErrorKind::InvalidArgument, "counts input is empty");
  std::vector<std::int64_t> counts;
  if (body.front() == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::InvalidArgument, std::string("malformed JSON counts: ") + e.what());
    }
    if (!doc.is_array()) fail(ErrorKind::InvalidArgument, "JSON counts must be an array");
    for (const auto& v : doc) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        fail(ErrorKind::InvalidArgument, "JSON counts must be non-negative integers");
      }
      counts.push_back(v.get<std::int64_t>());
    }
    return counts;
  }
  std::size_t rows = 0;
  std::size_t widest = 0;
  std::istringstream lines{std::string(body)};
  std::string line;
  while (std::getline(lines, line)) {
    if (trim(line).empty()) continue;
    ++rows;
    std::size_t fields = 0;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      counts.push_back(parse_count(rest.substr(0, comma)));
      ++fields;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    widest = std::max(widest, fields);
  }
  if (rows > 1 && widest > 1) {
    fail(ErrorKind::InvalidArgument, "CSV counts must be a single row or a single column");
  }
  return counts;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CellCounts read_counts(const std::filesystem::path& path) {
  return CellCounts(parse_counts(read_file(path)));
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double value, int decimals) {
  std::array<char, 128> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  return std::string(buf.data(), res.ptr);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

RunManifest RunManifest::start(std::string subcommand) {
  RunManifest m;
  m.subcommand = std::move(subcommand);
  m.timestamp = utc_timestamp();
  return m;
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs.emplace_back(path.string(), sha256_hex(read_file(path)));
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  j["version"] = version;
  j["timestamp"] = timestamp;
  j["inputs"] = nlohmann::json::array();
  for (const auto& [path, digest] : inputs) j["inputs"].push_back({{"path", path}, {"sha256", digest}});
  return j;
}

}  // namespace mgof
