#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "ontointent/embedding.hpp"
#include "ontointent/tokenizer.hpp"

namespace fixtures {

using ontointent::DatasetRecord;
using ontointent::IntentNode;
using ontointent::Ontology;

namespace {

struct Row {
  const char* id;
  const char* label;
  const char* description;
  const char* parent;  // empty for a domain
};

// clang-format off
const Row kFourDomain[] = {
    {"TicketBooking", "Ticket Booking", "tickets for journeys and events", ""},
    {"FlightTickets", "Flight Tickets", "airline seats on a plane", "TicketBooking"},
    {"BookFlight", "Book Flight", "reserve a seat on a plane", "FlightTickets"},
    {"CancelFlight", "Cancel Flight", "call off an airline reservation", "FlightTickets"},
    {"TrainTickets", "Train Tickets", "rail journeys between cities", "TicketBooking"},
    {"BookTrain", "Book Train", "reserve a rail seat", "TrainTickets"},
    {"CancelTrain", "Cancel Train", "call off a rail reservation", "TrainTickets"},
    {"EventTickets", "Event Tickets", "concerts shows and matches", "TicketBooking"},
    {"BuyConcertTicket", "Buy Concert Ticket", "admission to a live music show", "EventTickets"},
    {"BuyMovieTicket", "Buy Movie Ticket", "admission to a cinema screening", "EventTickets"},

    {"FoodDelivery", "Food Delivery", "meals and groceries brought to the door", ""},
    {"Restaurant", "Restaurant", "dining out and takeaway", "FoodDelivery"},
    {"RestaurantOrder", "Restaurant Order", "order pizza for delivery", "Restaurant"},
    {"ReserveTable", "Reserve Table", "hold a dinner table for a party", "Restaurant"},
    {"Grocery", "Grocery", "supermarket shopping", "FoodDelivery"},
    {"GroceryDelivery", "Grocery Delivery", "bring supermarket items home", "Grocery"},
    {"MealKit", "Meal Kit", "weekly recipe box subscription", "Grocery"},

    {"HolidayPlanning", "Holiday Planning", "vacations and leisure trips", ""},
    {"Accommodation", "Accommodation", "places to stay overnight", "HolidayPlanning"},
    {"BookHotel", "Book Hotel", "reserve a hotel room", "Accommodation"},
    {"BookResort", "Book Resort", "reserve a beach resort stay", "Accommodation"},
    {"Excursions", "Excursions", "sightseeing and transport at the destination", "HolidayPlanning"},
    {"BookTour", "Book Tour", "guided sightseeing trip", "Excursions"},
    {"RentCar", "Rent Car", "hire a vehicle for the holiday", "Excursions"},

    {"OnlineShopping", "Online Shopping", "purchases from web stores", ""},
    {"Orders", "Orders", "placed purchases", "OnlineShopping"},
    {"OrderTracking", "Order Tracking", "track my last order and its delivery status", "Orders"},
    {"ReturnItem", "Return Item", "send back a purchased product", "Orders"},
    {"Payments", "Payments", "money and billing", "OnlineShopping"},
    {"PayInvoice", "Pay Invoice", "settle an outstanding bill", "Payments"},
    {"UpdateCard", "Update Card", "change the saved credit card", "Payments"},
};
// clang-format on

const char* const kLeaves[] = {
    "BookFlight",   "CancelFlight",    "BookTrain",       "CancelTrain",
    "BuyConcertTicket", "BuyMovieTicket", "RestaurantOrder", "ReserveTable",
    "GroceryDelivery", "MealKit",      "BookHotel",       "BookResort",
    "BookTour",     "RentCar",         "OrderTracking",   "ReturnItem",
    "PayInvoice",   "UpdateCard",
};

const char* const kOpeners[] = {"please", "i want to", "can you", "i need to", "help me"};
const char* const kJoiners[] = {"and", "and also", "then", "plus"};

std::vector<IntentNode> to_nodes(const Row* rows, std::size_t n) {
  std::vector<IntentNode> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    IntentNode node;
    node.id = rows[i].id;
    node.label = rows[i].label;
    node.description = rows[i].description;
    if (*rows[i].parent != '\0') node.parent = rows[i].parent;
    nodes.push_back(std::move(node));
  }
  return nodes;
}

std::string join_pieces(const std::string& label) {
  std::string out;
  for (const auto& p : ontointent::label_pieces(label)) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

std::string lexicon_word(std::size_t i) {
  static const char* const syllables[] = {"ka", "lo", "mi", "ru", "te", "vo",
                                          "sa", "ne", "di", "po", "zu", "ha"};
  std::string w;
  do {
    w += syllables[i % 12];
    i /= 12;
  } while (i > 0);
  return w;
}

}  // namespace

Ontology four_domain_ontology() {
  return Ontology::from_nodes(to_nodes(kFourDomain, std::size(kFourDomain)));
}

std::string four_domain_json() { return four_domain_ontology().serialize(); }

Ontology travel_ontology() {
  static const Row rows[] = {
      {"Travel", "Travel", "trips and transport", ""},
      {"Flights", "Flights", "air travel", "Travel"},
      {"BookFlight", "Book Flight", "reserve a seat on a plane", "Flights"},
      {"Lodging", "Lodging", "places to stay", "Travel"},
      {"BookResort", "Book Resort", "reserve a resort stay", "Lodging"},
      {"Dining", "Dining", "food and restaurants", ""},
      {"Restaurants", "Restaurants", "eating out", "Dining"},
      {"OrderFood", "Order Food", "order a meal", "Restaurants"},
  };
  return Ontology::from_nodes(to_nodes(rows, std::size(rows)));
}

Ontology synthetic_ontology(std::size_t non_root, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> word(0, 1999);
  const std::size_t domains = std::max<std::size_t>(1, non_root / 600);
  const std::size_t categories = std::max<std::size_t>(domains, non_root / 50);
  std::vector<IntentNode> nodes;
  nodes.reserve(non_root);
  auto add = [&](const std::string& id, std::optional<std::string> parent) {
    IntentNode n;
    n.id = id;
    n.label = lexicon_word(word(rng)) + " " + lexicon_word(word(rng));
    n.description = lexicon_word(word(rng)) + " " + lexicon_word(word(rng)) + " " +
                    lexicon_word(word(rng));
    n.parent = std::move(parent);
    nodes.push_back(std::move(n));
  };
  for (std::size_t d = 0; d < domains && nodes.size() < non_root; ++d) {
    add("d" + std::to_string(d), std::nullopt);
  }
  for (std::size_t c = 0; c < categories && nodes.size() < non_root; ++c) {
    add("c" + std::to_string(c), "d" + std::to_string(c % domains));
  }
  for (std::size_t l = 0; nodes.size() < non_root; ++l) {
    add("l" + std::to_string(l), "c" + std::to_string(l % categories));
  }
  return Ontology::from_nodes(std::move(nodes));
}

std::string random_query(std::uint64_t& state, std::size_t words) {
  std::string q;
  for (std::size_t i = 0; i < words; ++i) {
    if (!q.empty()) q += ' ';
    q += lexicon_word(ontointent::splitmix64(state) % 2000);
  }
  return q;
}

std::vector<DatasetRecord> intent_dataset(std::size_t n, std::uint64_t seed,
                                          const std::string& id_prefix) {
  const Ontology o = four_domain_ontology();
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t m) {
    return std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
  };
  std::vector<DatasetRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    DatasetRecord r;
    r.id = id_prefix + std::to_string(i);
    const std::string a = kLeaves[pick(std::size(kLeaves))];
    std::string b;
    do {
      b = kLeaves[pick(std::size(kLeaves))];
    } while (b == a);
    r.gold_intents = {a, b};
    std::sort(r.gold_intents.begin(), r.gold_intents.end());
    r.query = std::string(kOpeners[pick(std::size(kOpeners))]) + " " +
              join_pieces(o.node(a).label) + " " + kJoiners[pick(std::size(kJoiners))] +
              " " + join_pieces(o.node(b).label);
    out.push_back(std::move(r));
  }
  return out;
}

ontointent::PipelineConfig fixture_config() {
  ontointent::PipelineConfig cfg;
  cfg.retrieval.k = 2;
  cfg.retrieval.theta = 0.3;
  return cfg;
}

MockRig::MockRig(std::uint64_t seed)
    : ontology(four_domain_ontology()),
      index(ontointent::NodeIndex::build(ontology, encoder)),
      backend(ontology, seed) {}

ontointent::Engine MockRig::engine(const ontointent::ClassifierHead* head) const {
  return ontointent::Engine(ontology, index, encoder, backend, head);
}

std::vector<DatasetRecord> test_split() { return intent_dataset(200, 11, "t"); }

std::vector<DatasetRecord> train_split() { return intent_dataset(400, 12, "tr"); }

ontointent::ClassifierHead fixture_head(const MockRig& rig,
                                        const ontointent::PipelineConfig& cfg) {
  auto plain = rig.engine();
  auto examples = ontointent::training_examples(train_split(), cfg, plain);
  ontointent::TrainingOptions opts;
  opts.learning_rate = 100.0;
  opts.epochs = 2000;
  opts.seed = cfg.seed;
  return ontointent::train_head(examples, rig.ontology.non_root_ids(),
                                rig.encoder.dimension(), opts);
}

std::vector<ontointent::TrainingExample> separable_examples(std::size_t n,
                                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<ontointent::TrainingExample> out;
  while (out.size() < n) {
    ontointent::TrainingExample ex;
    ex.features = {u(rng), u(rng), u(rng), u(rng)};
    if (std::abs(ex.features[0]) < 0.1 || std::abs(ex.features[1]) < 0.1) continue;
    if (ex.features[0] > 0) ex.labels.push_back("a");
    if (ex.features[1] > 0) ex.labels.push_back("b");
    out.push_back(std::move(ex));
  }
  return out;
}

double micro_f1(const ontointent::ClassifierHead& head,
                const std::vector<ontointent::TrainingExample>& data) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& ex : data) {
    auto pred = ontointent::classify(head, ex.features);
    for (const auto& p : pred) {
      (std::find(ex.labels.begin(), ex.labels.end(), p) != ex.labels.end() ? tp : fp)++;
    }
    for (const auto& g : ex.labels) {
      if (std::find(pred.begin(), pred.end(), g) == pred.end()) ++fn;
    }
  }
  return 2.0 * tp / static_cast<double>(2 * tp + fp + fn);
}

double reference_bce(const ontointent::ClassifierHead& head,
                     const std::vector<ontointent::TrainingExample>& data) {
  double total = 0.0;
  for (const auto& ex : data) {
    for (std::size_t i = 0; i < head.rows(); ++i) {
      double s = head.bias[i];
      for (std::size_t j = 0; j < head.dimension; ++j) {
        s += head.weights[i * head.dimension + j] * ex.features[j];
      }
      const double p = 1.0 / (1.0 + std::exp(-s));
      const bool y = std::find(ex.labels.begin(), ex.labels.end(), head.node_order[i]) !=
                     ex.labels.end();
      total += y ? -std::log(p) : -std::log(1.0 - p);
    }
  }
  return total / static_cast<double>(data.size() * head.rows());
}

}  // namespace fixtures
