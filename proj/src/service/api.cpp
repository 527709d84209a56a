#include "legis/service/api.hpp"

#include "legis/core/strings.hpp"
#include "legis/ingest/draft.hpp"
#include "legis/monitor/monitor.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>

namespace legis::service {

using nlohmann::json;

void ServiceConfig::validate() const
{
    if (port < 0 || port > 65535)
        throw Error(ErrorCode::InvalidArgument, "port must be in [0, 65535]");
    if (default_k == 0 || default_k > kMaxK)
        throw Error(ErrorCode::InvalidArgument, "default k must be in [1, " + std::to_string(kMaxK) + "]");
    if (threads < 1)
        throw Error(ErrorCode::InvalidArgument, "threads must be positive");
}

ServiceContext::ServiceContext(graph::GraphStore store, vector::HnswIndex index,
                               std::shared_ptr<llm::LlmGateway> gateway, ServiceConfig config)
    : store_(std::move(store)), index_(std::move(index)), gateway_(std::move(gateway)), config_(std::move(config)),
      pipeline_(store_, index_, *gateway_, &profiles_)
{
    store_.freeze();
    index_.freeze();
    profiles_ = rag::build_profile_cache(store_);
}

std::unique_ptr<ServiceContext> ServiceContext::load(const ServiceConfig& config)
{
    config.validate();
    auto store = graph::load_snapshot(config.snapshot_path);
    auto gateway = llm::LlmGateway::from_config(config.gateway);
    std::optional<vector::HnswIndex> index;
    if (!config.index_path.empty() && std::filesystem::exists(config.index_path))
        index = vector::load_index(config.index_path);
    else
        index = rag::build_law_index(store, llm::GatewayEmbedder(gateway));
    return std::make_unique<ServiceContext>(std::move(store), std::move(*index), std::move(gateway), config);
}

int http_status(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidRange:
    case ErrorCode::EmptyInput:
    case ErrorCode::EmptyDraft:
    case ErrorCode::EmptyText:
    case ErrorCode::NoLetters:
    case ErrorCode::UnknownTemplate:
    case ErrorCode::UnboundVariable:
        return 400;
    case ErrorCode::NodeNotFound:
        return 404;
    case ErrorCode::EmptyComparisonSet:
    case ErrorCode::EmptyTopics:
        return 422;
    case ErrorCode::BackendUnavailable:
    case ErrorCode::Timeout:
    case ErrorCode::GatewayError:
    case ErrorCode::UnparsableOutput:
    case ErrorCode::EmptyIndex:
        return 503;
    default:
        return 500;
    }
}

namespace {

ApiResponse json_response(const json& body, int status = 200)
{
    return {status, "application/json", body.dump() + "\n", {}};
}

ApiResponse error_response(int status, std::string_view code, std::string_view message)
{
    return json_response(json{{"code", code}, {"message", message}}, status);
}

ApiResponse error_response(const Error& e)
{
    return error_response(http_status(e.code()), to_string(e.code()), e.what());
}

json parse_body(const ApiRequest& req, bool required)
{
    if (trim(req.body).empty()) {
        if (required)
            throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
        return json::object();
    }
    json j;
    try {
        j = json::parse(req.body);
    } catch (const json::exception&) {
        throw Error(ErrorCode::InvalidArgument, "request body is not valid JSON");
    }
    if (!j.is_object())
        throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
    return j;
}

std::string string_field(const json& j, const char* name, bool required)
{
    const auto it = j.find(name);
    if (it == j.end() || it->is_null()) {
        if (required)
            throw Error(ErrorCode::InvalidArgument, std::string("missing field: ") + name);
        return {};
    }
    if (!it->is_string())
        throw Error(ErrorCode::InvalidArgument, std::string("field must be a string: ") + name);
    return it->get<std::string>();
}

std::size_t parse_count(std::string_view s, const char* name)
{
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be a non-negative integer");
    return v;
}

std::size_t k_field(const json& j, std::size_t fallback)
{
    const auto it = j.find("k");
    if (it == j.end() || it->is_null())
        return fallback;
    if (!it->is_number_integer() || it->get<long long>() < 1 || it->get<long long>() > static_cast<long long>(kMaxK))
        throw Error(ErrorCode::InvalidArgument, "k must be an integer in [1, " + std::to_string(kMaxK) + "]");
    return it->get<std::size_t>();
}

Date as_of_field(const json& j)
{
    const auto s = string_field(j, "as_of", false);
    return s.empty() ? Date::today() : Date::parse(s);
}

std::optional<std::string> query_param(const ApiRequest& req, const std::string& name)
{
    const auto it = req.query.find(name);
    if (it == req.query.end() || it->second.empty())
        return std::nullopt;
    return it->second;
}

json law_summary(const graph::NodeRecord& n)
{
    const auto& p = n.properties;
    return json{{"law_id", n.node_id},
                {"title", p.title},
                {"publication_date", p.publication_date ? json(p.publication_date->iso()) : json(nullptr)},
                {"ministry_domain", p.ministry_domain ? json(*p.ministry_domain) : json(nullptr)},
                {"stub", p.stub}};
}

} // namespace

ApiResponse Api::handle(const ApiRequest& request) const
{
    ApiResponse res;
    if (request.method == "OPTIONS") {
        res.status = 204;
        res.content_type.clear();
    } else {
        try {
            res = route(request);
        } catch (const Error& e) {
            res = error_response(e);
        } catch (const std::exception& e) {
            res = error_response(500, "Internal", e.what());
        }
    }
    res.headers["x-api-version"] = std::string(kApiVersion);
    if (!ctx_.config().cors_origin.empty()) {
        res.headers["Access-Control-Allow-Origin"] = ctx_.config().cors_origin;
        res.headers["Access-Control-Allow-Methods"] = "GET, POST, OPTIONS";
        res.headers["Access-Control-Allow-Headers"] = "Content-Type";
        res.headers["Access-Control-Expose-Headers"] = "x-api-version";
    }
    return res;
}

ApiResponse Api::route(const ApiRequest& req) const
{
    const auto& path = req.path;
    const bool get = req.method == "GET";
    const bool post = req.method == "POST";
    if (path == "/healthz" && get)
        return health();
    if (path == "/api/laws" && get)
        return list_laws(req);
    if (path == "/api/drafts/analyze" && post)
        return analyze_draft(req);
    if (path == "/api/landscape" && post)
        return landscape(req);
    if (path == "/api/monitor/timeseries" && get)
        return timeseries(req);
    if (path == "/api/monitor/degree" && get)
        return degree(req);
    constexpr std::string_view kLaws = "/api/laws/";
    constexpr std::string_view kReport = "/report";
    if (path.starts_with(kLaws) && path.size() > kLaws.size()) {
        std::string id = path.substr(kLaws.size());
        if (post && id.ends_with(kReport))
            return law_report(id.substr(0, id.size() - kReport.size()), req);
        if (get)
            return get_law(id);
    }
    return error_response(404, "NotFound", "no route for " + req.method + " " + path);
}

ApiResponse Api::health() const
{
    return json_response(json{{"status", "ok"},
                              {"snapshot_loaded", ctx_.store().frozen()},
                              {"index_loaded", ctx_.index().frozen()},
                              {"llm_mode", ctx_.gateway().config().mode == llm::GatewayMode::Live ? "live" : "mock"},
                              {"laws", ctx_.profiles().size()}});
}

ApiResponse Api::list_laws(const ApiRequest& req) const
{
    std::optional<int> year;
    if (const auto y = query_param(req, "year"))
        year = static_cast<int>(parse_count(*y, "year"));
    const auto domain = query_param(req, "domain");
    const auto q = query_param(req, "q");
    const std::size_t limit = query_param(req, "limit") ? parse_count(*query_param(req, "limit"), "limit")
                                                        : kDefaultPageSize;
    const std::size_t offset = query_param(req, "offset") ? parse_count(*query_param(req, "offset"), "offset") : 0;
    if (limit == 0 || limit > kMaxPageSize)
        throw Error(ErrorCode::InvalidArgument, "limit must be in [1, " + std::to_string(kMaxPageSize) + "]");
    const auto needle = q ? utf8_lower(*q) : std::string{};

    std::vector<const graph::NodeRecord*> matches;
    for (const auto& [id, n] : ctx_.store().nodes()) {
        const auto& p = n.properties;
        if (n.kind != graph::NodeKind::Law || p.stub)
            continue;
        if (year && (!p.publication_date || p.publication_date->year() != *year))
            continue;
        if (domain && p.ministry_domain.value_or("") != *domain)
            continue;
        if (q && utf8_lower(p.title).find(needle) == std::string::npos &&
            utf8_lower(id).find(needle) == std::string::npos)
            continue;
        matches.push_back(&n);
    }
    json items = json::array();
    for (std::size_t i = offset; i < matches.size() && i < offset + limit; ++i)
        items.push_back(law_summary(*matches[i]));
    return json_response(json{{"total", matches.size()}, {"limit", limit}, {"offset", offset}, {"items", items}});
}

ApiResponse Api::get_law(const std::string& id) const
{
    const auto& store = ctx_.store();
    const auto& n = store.node(id);
    if (n.kind != graph::NodeKind::Law)
        throw Error(ErrorCode::NodeNotFound, "not a law: " + id);
    json body = law_summary(n);
    body["articles"] = store.articles_of(id);
    const auto it = ctx_.profiles().find(id);
    body["profile"] = it == ctx_.profiles().end() ? json(nullptr) : json(it->second);
    return json_response(body);
}

ApiResponse Api::law_report(const std::string& id, const ApiRequest& req) const
{
    const auto& store = ctx_.store();
    const auto& subject_node = store.node(id);
    const auto subject = ctx_.profiles().find(id);
    if (subject_node.kind != graph::NodeKind::Law || subject == ctx_.profiles().end())
        throw Error(ErrorCode::NodeNotFound, "no analyzable law: " + id);

    const auto body = parse_body(req, false);
    const auto locale = body.contains("locale") ? report::parse_locale(string_field(body, "locale", true))
                                                : ctx_.config().locale;
    json cmp = body.contains("comparison") ? body.at("comparison") : json::object();
    if (!cmp.is_object())
        throw Error(ErrorCode::InvalidArgument, "comparison must be an object");

    std::optional<int> year;
    if (cmp.contains("year") && !cmp["year"].is_null()) {
        if (!cmp["year"].is_number_integer())
            throw Error(ErrorCode::InvalidArgument, "comparison.year must be an integer");
        year = cmp["year"].get<int>();
    }
    const auto domain = string_field(cmp, "domain", false);
    std::optional<std::set<std::string>> ids;
    if (cmp.contains("ids") && !cmp["ids"].is_null()) {
        if (!cmp["ids"].is_array())
            throw Error(ErrorCode::InvalidArgument, "comparison.ids must be an array");
        ids.emplace();
        for (const auto& v : cmp["ids"]) {
            if (!v.is_string())
                throw Error(ErrorCode::InvalidArgument, "comparison.ids must hold strings");
            ids->insert(v.get<std::string>());
        }
    }

    std::vector<text::ReadabilityProfile> others;
    for (const auto& [law_id, profile] : ctx_.profiles()) {
        if (law_id == id)
            continue;
        const auto& p = store.node(law_id).properties;
        if (year && (!p.publication_date || p.publication_date->year() != *year))
            continue;
        if (!domain.empty() && p.ministry_domain.value_or("") != domain)
            continue;
        if (ids && !ids->contains(law_id))
            continue;
        others.push_back(profile);
    }

    const bool it = locale == report::Locale::It;
    std::vector<std::string> parts;
    if (year)
        parts.push_back((it ? "anno " : "year ") + std::to_string(*year));
    if (!domain.empty())
        parts.push_back((it ? "ambito " : "domain ") + domain);
    if (ids)
        parts.push_back(std::to_string(ids->size()) + (it ? " leggi selezionate" : " selected laws"));
    const auto descriptor = parts.empty() ? std::string(it ? "tutte le leggi del corpus" : "all laws in the corpus")
                                          : join(parts, ", ");

    const auto bundle = report::comparison_stats(subject->second, others, subject_node.properties.title, descriptor);
    const auto polished = report::polish_report(report::render_report(bundle, locale), &ctx_.gateway());
    json bundle_json = bundle;
    return json_response(json{{"law_id", id},
                              {"comparison", bundle_json},
                              {"report", polished.text},
                              {"report_fallback", polished.fallback},
                              {"fallback_reason", polished.fallback_reason}});
}

ApiResponse Api::analyze_draft(const ApiRequest& req) const
{
    const auto body = parse_body(req, true);
    const auto title = string_field(body, "title", false);
    const auto text = string_field(body, "text", false);
    const auto k = k_field(body, ctx_.config().default_k);
    const auto as_of = as_of_field(body);
    const auto locale = body.contains("locale") ? report::parse_locale(string_field(body, "locale", true))
                                                : ctx_.config().locale;
    const auto draft = ingest::parse_draft(text, {{"title", title}});
    const auto report = ctx_.pipeline().analyze_draft(draft, as_of, k, locale);
    auto out = rag::to_json(report);
    out["as_of"] = as_of.iso();
    return json_response(out);
}

ApiResponse Api::landscape(const ApiRequest& req) const
{
    const auto body = parse_body(req, true);
    const auto input = string_field(body, "input", false);
    if (trim(input).empty())
        throw Error(ErrorCode::EmptyInput, "input must be a non-empty string");
    const auto k = k_field(body, ctx_.config().default_k);
    const auto as_of = as_of_field(body);
    return json_response(rag::to_json(ctx_.pipeline().landscape(input, as_of, k)));
}

ApiResponse Api::timeseries(const ApiRequest& req) const
{
    const auto need = [&](const char* name) {
        auto v = query_param(req, name);
        if (!v)
            throw Error(ErrorCode::InvalidArgument, std::string("missing query parameter: ") + name);
        return *v;
    };
    const auto metric = monitor::parse_series_metric(need("metric"));
    const auto granularity = monitor::parse_granularity(query_param(req, "granularity").value_or("year"));
    const auto from = Date::parse(need("from"));
    const auto to = Date::parse(need("to"));
    const auto format = query_param(req, "format").value_or("json");
    const auto ts = monitor::timeseries(ctx_.store(), metric, granularity, from, to);
    if (format == "csv")
        return {200, "text/csv; charset=utf-8", monitor::export_csv(ts), {}};
    if (format != "json")
        throw Error(ErrorCode::InvalidArgument, "format must be json or csv");
    return {200, "application/json", monitor::export_json(ts) + "\n", {}};
}

ApiResponse Api::degree(const ApiRequest& req) const
{
    auto kind_name = query_param(req, "kind").value_or("cites");
    std::transform(kind_name.begin(), kind_name.end(), kind_name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    const auto kind = graph::parse_edge_kind(kind_name);
    const auto direction = monitor::parse_direction(query_param(req, "direction").value_or("in"));
    const auto format = query_param(req, "format").value_or("json");
    const auto h = monitor::degree_distribution(ctx_.store(), kind, direction);
    if (format == "csv")
        return {200, "text/csv; charset=utf-8", monitor::export_csv(h), {}};
    if (format != "json")
        throw Error(ErrorCode::InvalidArgument, "format must be json or csv");
    return {200, "application/json", monitor::export_json(h) + "\n", {}};
}

} // namespace legis::service
