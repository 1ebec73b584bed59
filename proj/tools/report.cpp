#include <array>
#include <sstream>

#include <openssl/evp.h>

#include "cli.hpp"
#include "homotope/errors.hpp"

namespace homotope::cli {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

Status parse_status(std::string_view text) {
  for (Status s : {Status::Pass, Status::Fail, Status::Error, Status::Inconclusive})
    if (text == to_string(s)) return s;
  throw ParseError("unknown status '" + std::string(text) + "'");
}

void Report::add(std::string name, Status status, Json data) {
  checks.push_back({std::move(name), status, std::move(data)});
}

void Report::add(std::string name, bool passed, Json data) {
  add(std::move(name), passed ? Status::Pass : Status::Fail, std::move(data));
}

bool Report::failed() const {
  for (const auto& c : checks)
    if (c.status == Status::Fail || c.status == Status::Error) return true;
  return false;
}

Json to_json(const Report& r) {
  Json j;
  j["tool"] = r.tool;
  j["version"] = r.version;
  j["command"] = r.command;
  j["input_digest"] = r.input_digest;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["status"] = to_string(c.status);
    cj["data"] = c.data;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

Report report_from_json(const Json& j) {
  try {
    Report r;
    r.tool = j.at("tool").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("checks"))
      r.checks.push_back({c.at("name").get<std::string>(), parse_status(c.at("status").get<std::string>()), c.at("data")});
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string emit(const Report& r, Format format) {
  if (format == Format::Structured) return to_json(r).dump(2) + "\n";
  std::ostringstream os;
  os << r.tool << " " << r.version << "  " << r.command << "\n";
  os << "input sha256:" << r.input_digest << "\n";
  if (r.seed) os << "seed " << *r.seed << "\n";
  for (const auto& c : r.checks) {
    os << "[" << to_string(c.status) << "] " << c.name;
    if (c.data.is_object()) {
      for (const auto& [k, v] : c.data.items()) os << "  " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    } else if (!c.data.is_null()) {
      os << "  " << c.data.dump();
    }
    os << "\n";
  }
  return os.str();
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace homotope::cli
