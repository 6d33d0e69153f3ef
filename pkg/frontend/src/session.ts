// Session state: one signed-in principal per browser tab.

import type { LoginResponse, UiSession } from "./types.js";

const STORAGE_KEY = "saris-session";

export function sessionFromLogin(body: LoginResponse): UiSession {
  return {
    token: body.token,
    role: body.role,
    principalId: body.principal_id,
    displayName: body.display_name,
  };
}

interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export class SessionStore {
  private current: UiSession | null = null;

  constructor(private readonly backing: StorageLike | null = null) {
    const raw = backing?.getItem(STORAGE_KEY);
    if (raw) {
      try {
        this.current = JSON.parse(raw) as UiSession;
      } catch {
        backing?.removeItem(STORAGE_KEY);
      }
    }
  }

  get(): UiSession | null {
    return this.current;
  }

  set(session: UiSession): void {
    this.current = session;
    this.backing?.setItem(STORAGE_KEY, JSON.stringify(session));
  }

  clear(): void {
    this.current = null;
    this.backing?.removeItem(STORAGE_KEY);
  }
}
