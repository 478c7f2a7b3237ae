import { describe, expect, it, vi } from "vitest";

import type { Advice, Item, Rule } from "../src/api.js";
import { renderAdvice, renderConstraints, renderRulesTable } from "../src/render.js";

const TEAR_GAS: Item = {
  name: "tear gas",
  carry_on: false,
  check_in: false,
  prohibited: true,
  category: "aerosol",
};

function advice(partial: Partial<Advice>): Advice {
  return {
    query: "",
    exact: null,
    partials: [],
    similar: [],
    rule_recommendations: [],
    recorded: false,
    ...partial,
  };
}

describe("renderAdvice", () => {
  it("prohibited item renders the red badge", () => {
    const panel = renderAdvice(advice({ query: "tear gas", exact: TEAR_GAS }));
    const badge = panel.querySelector(".badge-danger");
    expect(badge?.textContent).toBe("PROHIBITED");
  });

  it("gibberish renders the empty suggestion state", () => {
    const panel = renderAdvice(advice({ query: "xyzzy" }));
    expect(panel.textContent).toContain('no exact match for "xyzzy"');
    const empties = panel.querySelectorAll(".empty-state");
    expect(empties.length).toBe(2); // similar + rule suggestions
    expect(empties[0].textContent).toBe("no suggestions");
  });

  it("shows only what the service sent", () => {
    const payload = advice({
      query: "piano",
      similar: [
        { item: { ...TEAR_GAS, name: "violin", prohibited: false, carry_on: true }, score: 0.97, in_catalog: true },
      ],
    });
    const panel = renderAdvice(payload);
    const names = [...panel.querySelectorAll(".scored-item .item-name")].map(
      (node) => node.textContent,
    );
    expect(names).toEqual(["violin"]);
  });

  it("non-catalog suggestions are marked instead of given verdicts", () => {
    const payload = advice({
      rule_recommendations: [
        {
          item: { name: "warp core", carry_on: false, check_in: false, prohibited: false, category: "" },
          score: 0.5,
          in_catalog: false,
        },
      ],
    });
    const panel = renderAdvice(payload);
    expect(panel.textContent).toContain("NOT IN CATALOG");
    expect(panel.querySelector(".badge-danger")).toBeNull();
  });
});

describe("renderRulesTable", () => {
  const rules: Rule[] = [
    {
      antecedent: ["ipod"],
      consequent: ["piano"],
      support: 0.5,
      confidence: 1.0,
      lift: 2.0,
      leverage: 0.25,
      conviction: null,
      conviction_infinite: true,
    },
  ];

  it("renders one row per rule with the infinity glyph", () => {
    const panel = renderRulesTable(rules, { key: "lift", descending: true }, () => {});
    const rows = panel.querySelectorAll(".rule-row");
    expect(rows.length).toBe(1);
    expect(rows[0].textContent).toContain("ipod");
    expect(rows[0].textContent).toContain("piano");
    expect(rows[0].textContent).toContain("∞");
  });

  it("clicking a header asks for that sort key", () => {
    const onSort = vi.fn();
    const panel = renderRulesTable(rules, { key: "lift", descending: true }, onSort);
    const headers = [...panel.querySelectorAll("th")];
    headers.find((h) => h.dataset.key === "confidence")!.click();
    expect(onSort).toHaveBeenCalledWith("confidence");
  });
});

describe("renderConstraints", () => {
  it("weights render as cap, range, or no published cap", () => {
    const panel = renderConstraints([
      { airline: "IndiGo", cabin_weight_kg: 7, cabin_dimensions_cm: [55, 35, 25], checkin_allowance: "15 kg to 30 kg" },
      { airline: "Vistara", cabin_weight_kg: [7, 12], cabin_dimensions_cm: [55, 40, 20], checkin_allowance: "15 kg to 30 kg" },
      { airline: "TSA", cabin_weight_kg: null, cabin_dimensions_cm: [55.9, 35.6, 22.9], checkin_allowance: "50 pounds" },
    ]);
    expect(panel.textContent).toContain("up to 7 kg");
    expect(panel.textContent).toContain("7–12 kg");
    expect(panel.textContent).toContain("no published cap");
    expect(panel.textContent).toContain("55 x 35 x 25");
  });
});
