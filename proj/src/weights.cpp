#include "stopsmith/weights.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "stopsmith/log_space.hpp"

namespace stopsmith {

WeightVector::WeightVector(std::vector<double> theta) {
    if (theta.empty()) throw BadParameter("weight vector must have size >= 1");
    for (const double w : theta) {
        if (!std::isfinite(w) || w <= 0.0)
            throw BadParameter("weights must be finite and > 0");
    }
    theta_ = std::move(theta);
    prefix_.resize(theta_.size() + 1);
    prefix_[0] = 0.0;
    for (std::size_t i = 0; i < theta_.size(); ++i) prefix_[i + 1] = prefix_[i] + theta_[i];
    KahanSum total;
    for (const double w : theta_) total.add(w);
    total_ = total.value();
}

WeightVector WeightVector::unit(int n) {
    if (n < 1) throw BadParameter("weight vector must have size >= 1");
    return WeightVector(std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

WeightVector WeightVector::geometric(int n, double q) {
    if (n < 1) throw BadParameter("weight vector must have size >= 1");
    if (!(q > 0.0) || !std::isfinite(q)) throw BadParameter("geometric ratio must be > 0");
    std::vector<double> theta(static_cast<std::size_t>(n));
    const double lq = std::log(q);
    for (int i = 1; i <= n; ++i) theta[static_cast<std::size_t>(i) - 1] = std::exp(i * lq);
    return WeightVector(std::move(theta));  // rejects overflow/underflow to inf/0
}

WeightVector WeightVector::sukhatme(int n) {
    if (n < 1) throw BadParameter("weight vector must have size >= 1");
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) theta[static_cast<std::size_t>(j) - 1] = n + 1 - j;
    return WeightVector(std::move(theta));
}

WeightVector WeightVector::reverse_sukhatme(int n) {
    if (n < 1) throw BadParameter("weight vector must have size >= 1");
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) theta[static_cast<std::size_t>(j) - 1] = j;
    return WeightVector(std::move(theta));
}

namespace {

double parse_positive_real(const std::string& text, const char* what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError(std::string("cannot parse ") + what + " '" + text + "'");
    }
    if (used != text.size())
        throw ParseError(std::string("trailing junk after ") + what + " '" + text + "'");
    return value;
}

}  // namespace

WeightVector parse_weights(const std::string& text, int n) {
    if (text == "unit" || text == "sukhatme" || text == "rev-sukhatme" ||
        text.rfind("geom:", 0) == 0) {
        if (n < 1) throw ParseError("weight shorthand '" + text + "' needs an explicit n");
        if (text == "unit") return WeightVector::unit(n);
        if (text == "sukhatme") return WeightVector::sukhatme(n);
        if (text == "rev-sukhatme") return WeightVector::reverse_sukhatme(n);
        const double q = parse_positive_real(text.substr(5), "geometric ratio");
        return WeightVector::geometric(n, q);
    }
    std::vector<double> theta;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) theta.push_back(parse_positive_real(item, "weight"));
    if (theta.empty()) throw ParseError("empty weight list");
    if (n > 0 && theta.size() != static_cast<std::size_t>(n))
        throw ParseError("weight list has " + std::to_string(theta.size()) +
                         " entries but n = " + std::to_string(n));
    return WeightVector(std::move(theta));
}

WeightVector load_weights_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open weights file '" + path + "'");
    std::vector<double> theta;
    std::string line;
    while (std::getline(in, line)) {
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        theta.push_back(parse_positive_real(line.substr(begin, end - begin + 1), "weight"));
    }
    if (theta.empty()) throw ParseError("weights file '" + path + "' has no entries");
    return WeightVector(std::move(theta));
}

}  // namespace stopsmith
