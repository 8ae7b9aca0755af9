#pragma once

#include <string>

#include "swarmbmc/frontend.hpp"

// Desk-scale benchmark sources, shape-identical to the bundled .imp files but
// with adjustable sizes for oracle-feasible enumeration.
namespace testutil {

inline std::string stack_source(int size, int tlen) {
  std::string s = R"(
int s;
int stack[)" + std::to_string(size) + R"(];

func top() {
  log("top");
  return stack[s];
}

func push(int i) {
  log("push");
  stack[s] = i;
  s = s + 1;
}

func pop() {
  log("pop");
  if (s > 0) {
    s = s - 1;
  }
}

func main() {
  int v;
  int action;
  int i;
  for (i = 0; i < )" + std::to_string(tlen) + R"(; i = i + 1) {
    action = havoc();
    assume(action >= 0 && action <= 2);
    if (action == 0) {
      v = top();
    } else {
      if (action == 1) {
        v = havoc();
        push(v);
      } else {
        pop();
      }
    }
  }
}
)";
  return s;
}

inline std::string queue_source(int size, int tlen) {
  return R"(
int buf[)" + std::to_string(size) + R"(];
int head;
int rear;
int count;
int alive;

func isempty() {
  log("isempty");
  assert(alive != 0);
  return count == 0;
}

func enqueue(int v) {
  log("enqueue");
  assert(alive != 0);
  buf[rear] = v;
  rear = rear + 1;
  count = count + 1;
}

func dequeue() {
  log("dequeue");
  assert(alive != 0);
  if (count > 0) {
    head = head + 1;
    count = count - 1;
  }
}

func front() {
  log("front");
  assert(alive != 0);
  if (count > 0) {
    return buf[head];
  }
  return 0;
}

func dispose() {
  log("dispose");
  alive = 0;
}

func main() {
  int v;
  int action;
  int i;
  alive = 1;
  for (i = 0; i < )" + std::to_string(tlen) + R"(; i = i + 1) {
    action = havoc();
    assume(action >= 0 && action <= 4);
    if (action == 0) {
      v = isempty();
    } else {
      if (action == 1) {
        v = havoc();
        enqueue(v);
      } else {
        if (action == 2) {
          dequeue();
        } else {
          if (action == 3) {
            v = front();
          } else {
            dispose();
          }
        }
      }
    }
  }
}
)";
}

inline std::string stacklist_source(int size, int tlen) {
  return R"(
int data[)" + std::to_string(size) + R"(];
int n;
int alive;

func push(int v) {
  log("push");
  assert(alive != 0);
  if (n < )" + std::to_string(size) + R"() {
    data[n] = v;
    n = n + 1;
  }
}

func top() {
  log("top");
  assert(alive != 0);
  if (n > 0) {
    return data[n - 1];
  }
  return 0;
}

func pop() {
  log("pop");
  assert(alive != 0);
  if (n > 0) {
    n = n - 1;
  }
}

func dispose() {
  log("dispose");
  alive = 0;
}

func main() {
  int v;
  int action;
  int i;
  alive = 1;
  for (i = 0; i < )" + std::to_string(tlen) + R"(; i = i + 1) {
    action = havoc();
    assume(action >= 0 && action <= 3);
    if (action == 0) {
      v = havoc();
      push(v);
    } else {
      if (action == 1) {
        v = top();
      } else {
        if (action == 2) {
          pop();
        } else {
          dispose();
        }
      }
    }
  }
}
)";
}

inline swarmbmc::Program parse_ok(const std::string& src, const std::string& file = "<test>") {
  swarmbmc::Program p = swarmbmc::parse(src, file);
  auto errors = swarmbmc::validate(p);
  REQUIRE(errors.empty());
  return p;
}

}  // namespace testutil
