/** One colour per configuration class, used for killed-cell causes. */

export const CONFIG_COLORS: Record<string, string> = {
  taco: "#e6194b",
  mariposa: "#f58231",
  bat: "#ffe119",
  nested: "#3cb44b",
  crossing: "#46f0f0",
  ears: "#4363d8",
  swords: "#911eb4",
  david: "#f032e6",
};

export const CONFIG_NAMES: string[] = Object.keys(CONFIG_COLORS);

export function colorFor(config: string): string {
  const c = CONFIG_COLORS[config];
  if (!c) {
    throw new Error(`unknown configuration: ${config}`);
  }
  return c;
}
