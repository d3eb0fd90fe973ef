// Copyright 2026 The tomscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <utility>

#include "tomscore/dataset_io.h"

namespace tomscore {
namespace {

struct LayerSpec {
  const char* text;
  const char* atoms;
};

struct ExampleSpec {
  const char* id;
  TaskKind task;
  const char* simulator;
  std::vector<std::string> characters;
  std::array<LayerSpec, kNumLayers> layers;  // Perception .. Action.
};

DatasetExample Build(const ExampleSpec& spec) {
  DatasetExample ex;
  ex.id = spec.id;
  ex.task = spec.task;
  ex.simulator = spec.simulator;
  ex.video_ref = std::string("videos/") + spec.id + ".mp4";
  ex.characters = spec.characters;
  const ParseOptions options = ex.parse_options();
  for (LayerKind kind : kAllLayers) {
    const LayerSpec& l = spec.layers[LayerIndex(kind)];
    GroundTruthLayer& gt = ex.ground_truth[LayerIndex(kind)];
    gt.text = l.text;
    gt.atoms = l.atoms;
    gt.sequence = ParseAtomic(gt.atoms, kind, options);
  }
  return ex;
}

}  // namespace

std::vector<DatasetExample> MakeToyDataset() {
  const std::vector<ExampleSpec> specs = {
      {"supp-b4-1", TaskKind::kFalseBelief, "virtualhome", {"Alice", "David"},
       {{
           {"Alice enters the kitchen and leaves an apple on the table before "
            "going out. David comes in, takes the apple and stores it in the "
            "fridge. Alice returns and wanders around the kitchen.",
            "walk(Alice, kitchen), place(Alice, apple, to=table), "
            "walk(Alice, outside), walk(David, kitchen), pick(David, apple), "
            "putin(David, apple, to=fridge), walk(Alice, kitchen)"},
           {"Alice seems to be searching for the apple. She still thinks it "
            "is on the table, while I know it is now inside the fridge.",
            "attribute_belief(Alice, searching(apple)), "
            "attribute_belief(Alice, human_believes(object_on(table))), "
            "hold_true_belief(robot, object_on(fridge))"},
           {"I want to help Alice find her apple and clear up her mistaken "
            "belief about where it is.",
            "attribute_desire(robot, assist(Alice, find(apple)))"},
           {"I will take the apple out of the fridge and bring it to Alice.",
            "form_intention(robot, fetch(apple, from=fridge, to=Alice))"},
           {"I should correct her false belief by opening the fridge and "
            "handing the apple to Alice.",
            "resolve_misbelief(robot, belief_conflict(Alice, object_location)), "
            "make_decision(robot, fetch(apple, from=fridge, to=Alice))"},
           {"walk(fridge), open(fridge), pick(apple), walk(Alice)",
            "walk(fridge), open(fridge), pick(apple), walk(Alice)"},
       }}},
      {"supp-b4-2", TaskKind::kImplicitGoal, "threedworld", {"char0"},
       {{
           {"A man in a wheelchair rolls forward, veers left, backs up and "
            "tries the right side. A fire hydrant stands right in front of him.",
            "move(char0, forward), move(char0, forward_left), "
            "move(char0, backward), move(char0, forward_right)"},
           {"I think he is trying to go straight ahead and the fire hydrant "
            "is in his way.",
            "attribute_belief(char0, searching(path_forward)), "
            "hold_true_belief(robot, object_on(path))"},
           {"I want to help him keep moving forward.",
            "attribute_desire(robot, assist(char0, move(fire_hydrant)))"},
           {"Push the fire hydrant over to the corner.",
            "form_intention(robot, fetch(fire_hydrant, from=path, to=corner))"},
           {"I will clear his route by moving the fire hydrant aside.",
            "make_decision(robot, fetch(fire_hydrant, from=path, to=corner))"},
           {"walk(fire_hydrant), move(fire_hydrant, corner)",
            "walk (fire_hydrant), move (fire_hydrant, corner)"},
       }}},
      {"fb-remote", TaskKind::kFalseBelief, "virtualhome", {"Bob", "Carol"},
       {{
           {"Bob sets the remote on the sofa and goes to the bathroom. Carol "
            "puts the remote into the drawer. Bob comes back and looks at the "
            "sofa.",
            "place(Bob, remote, to=sofa), walk(Bob, bathroom), "
            "pick(Carol, remote), putin(Carol, remote, to=drawer), "
            "walk(Bob, living_room), lookat(Bob, sofa)"},
           {"Bob believes the remote is still on the sofa, but it is in the "
            "drawer.",
            "attribute_belief(Bob, human_believes(object_on(sofa))), "
            "lack_belief(Bob, object_on(drawer)), "
            "know(robot, object_on(drawer))"},
           {"I want to help Bob get the remote.",
            "attribute_desire(robot, assist(Bob, find(remote)))"},
           {"I will bring the remote from the drawer to Bob.",
            "form_intention(robot, fetch(remote, from=drawer, to=Bob))"},
           {"Open the drawer and give Bob the remote.",
            "resolve_misbelief(robot, belief_conflict(Bob, object_location)), "
            "make_decision(robot, fetch(remote, from=drawer, to=Bob))"},
           {"walk(drawer), open(drawer), pick(remote), walk(Bob)",
            "walk(drawer), open(drawer), pick(remote), walk(Bob)"},
       }}},
      {"fb-book", TaskKind::kFalseBelief, "virtualhome", {"Emma", "Frank"},
       {{
           {"Emma leaves her book on the desk and steps out. Frank moves the "
            "book onto the shelf. Emma returns to the desk.",
            "place(Emma, book, to=desk), walk(Emma, hallway), "
            "pick(Frank, book), puton(Frank, book, to=shelf), walk(Emma, desk)"},
           {"Emma expects the book on the desk; it is actually on the shelf.",
            "attribute_belief(Emma, human_believes(object_on(desk))), "
            "hold_true_belief(robot, object_on(shelf))"},
           {"I want to help Emma find her book.",
            "attribute_desire(robot, assist(Emma, find(book)))"},
           {"Take the book from the shelf to Emma.",
            "form_intention(robot, fetch(book, from=shelf, to=Emma))"},
           {"I will hand Emma the book from the shelf.",
            "make_decision(robot, fetch(book, from=shelf, to=Emma))"},
           {"walk(shelf), pick(book), walk(Emma)",
            "walk(shelf), pick(book), walk(Emma)"},
       }}},
      {"fb-keys", TaskKind::kFalseBelief, "virtualhome", {"char0", "char1"},
       {{
           {"The first person drops the keys on the table and leaves. The "
            "second person locks the keys in the cabinet. The first person "
            "comes back and checks the table.",
            "place(char0, keys, to=table), walk(char0, outside), "
            "pick(char1, keys), putin(char1, keys, to=cabinet), "
            "close(char1, cabinet), walk(char0, table)"},
           {"He does not know the keys were moved into the cabinet.",
            "unknow(char0, object_on(cabinet)), "
            "attribute_belief(char0, human_believes(object_on(table)))"},
           {"I want to help him recover his keys.",
            "attribute_desire(robot, assist(char0, find(keys)))"},
           {"Retrieve the keys from the cabinet for him.",
            "form_intention(robot, fetch(keys, from=cabinet, to=char0))"},
           {"Open the cabinet, take the keys, close it and bring them over.",
            "resolve_misbelief(robot, belief_conflict(char0, object_location)), "
            "make_decision(robot, fetch(keys, from=cabinet, to=char0))"},
           {"walk(cabinet), open(cabinet), pick(keys), close(cabinet), walk(char0)",
            "walk(cabinet), open(cabinet), pick(keys), close(cabinet), walk(char0)"},
       }}},
      {"fb-milk", TaskKind::kFalseBelief, "virtualhome", {"Grace", "Henry"},
       {{
           {"Grace pours cereal and leaves the milk on the counter, then "
            "answers the door. Henry puts the milk back in the fridge. Grace "
            "returns and looks at the counter.",
            "place(Grace, milk, to=counter), walk(Grace, door), "
            "Pick_Up(Henry, milk), putin(Henry, milk, to=fridge), "
            "walk(Grace, kitchen), lookat(Grace, counter)"},
           {"Grace thinks the milk is on the counter but it is in the fridge.",
            "attribute_belief(Grace, human_believes(object_on(counter))), "
            "know(robot, object_on(fridge))"},
           {"I want to help Grace finish her breakfast.",
            "attribute_desire(robot, assist(Grace, find(milk)))"},
           {"Bring the milk from the fridge to Grace.",
            "form_intention(robot, fetch(milk, from=fridge, to=Grace))"},
           {"I will get the milk out of the fridge and give it to Grace.",
            "make_decision(robot, fetch(milk, from=fridge, to=Grace))"},
           {"walk(fridge), open(fridge), pick(milk), close(fridge), walk(Grace)",
            "walk(fridge), open(fridge), pick_up(milk), close(fridge), walk(Grace)"},
       }}},
      {"ig-cook", TaskKind::kImplicitGoal, "virtualhome", {"Ivy"},
       {{
           {"Ivy chops carrots, then opens two cabinets one after another and "
            "closes them again while glancing at the stove.",
            "cut(Ivy, carrot), open(Ivy, cabinet), close(Ivy, cabinet), "
            "open(Ivy, cupboard), close(Ivy, cupboard), lookat(Ivy, stove)"},
           {"Ivy is looking for a pot to cook the carrots; the pot is in the "
            "lower kitchen cabinet.",
            "attribute_belief(Ivy, searching(pot)), "
            "hold_true_belief(robot, object_on(kitchen_cabinet))"},
           {"I want to help Ivy cook.",
            "attribute_desire(robot, assist(Ivy, find(pot)))"},
           {"Bring the pot to the stove and turn it on.",
            "form_intention(robot, fetch(pot, from=kitchen_cabinet, to=stove))"},
           {"I will place the pot on the stove and switch the stove on.",
            "make_decision(robot, fetch(pot, from=kitchen_cabinet, to=stove))"},
           {"walk(kitchen_cabinet), open(kitchen_cabinet), pick(pot), "
            "walk(stove), place(pot, to=stove), switchon(stove)",
            "walk(kitchen_cabinet), open(kitchen_cabinet), pick(pot), "
            "walk(stove), place(pot, to=stove), switchon(stove)"},
       }}},
      {"ig-lamp", TaskKind::kImplicitGoal, "threedworld", {"Jack"},
       {{
           {"Jack sits down with a book in a dim room, holds it close to his "
            "face and squints.",
            "sit(Jack, armchair), read(Jack, book), hold(Jack, book)"},
           {"Jack wants to read but the room is too dark.",
            "attribute_belief(Jack, searching(light))"},
           {"I want to help Jack read comfortably.",
            "attribute_desire(robot, assist(Jack, read(book)))"},
           {"Turn on the lamp next to Jack.",
            "form_intention(robot, switchon(lamp))"},
           {"I will switch on the reading lamp.",
            "make_decision(robot, switchon(lamp))"},
           {"walk(lamp), switchon(lamp)", "walk(lamp), switchon(lamp)"},
       }}},
      {"ig-reach", TaskKind::kImplicitGoal, "threedworld", {"char0"},
       {{
           {"A child stands below the shelf, stretches toward the cookie jar "
            "and jumps several times without reaching it.",
            "walk(char0, shelf), lookat(char0, cookies), stand(char0), "
            "stand(char0)"},
           {"The child wants the cookies but cannot reach the top shelf.",
            "attribute_belief(char0, searching(cookies)), "
            "know(robot, object_on(shelf))"},
           {"I want to help the child get the cookies.",
            "attribute_desire(robot, assist(char0, find(cookies)))"},
           {"Hand the cookies from the shelf to the child.",
            "form_intention(robot, fetch(cookies, from=shelf, to=char0))"},
           {"I will take the cookies down and give them to the child.",
            "make_decision(robot, fetch(cookies, from=shelf, to=char0))"},
           {"walk(shelf), pick(cookies), walk(char0)",
            "walk(shelf), pick(cookies), walk(char0)"},
       }}},
      {"ig-door", TaskKind::kImplicitGoal, "virtualhome", {"Kate"},
       {{
           {"Kate carries a full laundry basket with both arms and pushes at "
            "the closed bedroom door with her elbow.",
            "hold(Kate, laundry_basket), walk(Kate, door), move(Kate, door)"},
           {"Kate needs to get through the door but her hands are full.",
            "attribute_belief(Kate, searching(way_through)), "
            "hold_true_belief(robot, object_on(door))"},
           {"I want to help Kate carry the laundry through.",
            "attribute_desire(robot, assist(Kate, move(laundry_basket)))"},
           {"Open the bedroom door for Kate.",
            "form_intention(robot, open(door))"},
           {"I will open the door so Kate can pass.",
            "make_decision(robot, open(door))"},
           {"walk(door), open(door)", "walk(door), open(door)"},
       }}},
  };

  std::vector<DatasetExample> out;
  out.reserve(specs.size());
  for (const ExampleSpec& spec : specs) out.push_back(Build(spec));
  return out;
}

}  // namespace tomscore
