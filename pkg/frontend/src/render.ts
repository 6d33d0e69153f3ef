// Minimal virtual-node layer: views build plain data, tests assert on it,
// and the browser turns it into real DOM. No framework required.

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  children: Array<VNode | string>;
  on: Record<string, (event: Event) => void>;
}

type Child = VNode | string | null | undefined | false;

export function h(
  tag: string,
  attrs: Record<string, string> = {},
  ...children: Child[]
): VNode {
  return {
    tag,
    attrs,
    children: children.filter((c): c is VNode | string => !!c || c === ""),
    on: {},
  };
}

export function on(
  node: VNode,
  handlers: Record<string, (event: Event) => void>,
): VNode {
  return { ...node, on: { ...node.on, ...handlers } };
}

export function toDom(node: VNode, doc: Document): HTMLElement {
  const element = doc.createElement(node.tag);
  for (const [name, value] of Object.entries(node.attrs)) {
    element.setAttribute(name, value);
  }
  for (const [event, handler] of Object.entries(node.on)) {
    element.addEventListener(event, handler);
  }
  for (const child of node.children) {
    element.append(typeof child === "string" ? doc.createTextNode(child) : toDom(child, doc));
  }
  return element;
}

// test-friendly queries over the virtual tree ---------------------------

export function findAll(
  node: VNode,
  match: (candidate: VNode) => boolean,
): VNode[] {
  const hits: VNode[] = [];
  const walk = (current: VNode) => {
    if (match(current)) hits.push(current);
    for (const child of current.children) {
      if (typeof child !== "string") walk(child);
    }
  };
  walk(node);
  return hits;
}

export function textOf(node: VNode): string {
  return node.children
    .map((child) => (typeof child === "string" ? child : textOf(child)))
    .join("");
}
