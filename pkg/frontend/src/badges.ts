/** Verdict badges are a pure function of the three catalog booleans. */

import type { Item } from "./api.js";

export type BadgeKind = "danger" | "ok" | "muted";

export interface Badge {
  label: string;
  kind: BadgeKind;
}

export function verdictBadges(item: Pick<Item, "carry_on" | "check_in" | "prohibited">): Badge[] {
  if (item.prohibited) {
    return [{ label: "PROHIBITED", kind: "danger" }];
  }
  const badges: Badge[] = [];
  if (item.carry_on) {
    badges.push({ label: "CARRY-ON", kind: "ok" });
  }
  if (item.check_in) {
    badges.push({ label: "CHECK-IN", kind: "ok" });
  }
  if (badges.length === 0) {
    badges.push({ label: "NO VERDICT", kind: "muted" });
  }
  return badges;
}

export function badgeClass(kind: BadgeKind): string {
  return `badge badge-${kind}`;
}
